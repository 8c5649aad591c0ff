#pragma once

#include "quiver/ast.hpp"

namespace quiver {

// Rewrites sugar into core statements for the given verification direction:
// conditional choice into demonic/angelic choice with guard assumptions,
// while into the Park encoding (requires @invariant), spec statements into
// their assert/havoc/validate/assume encoding. Idempotent.
StmtPtr desugar(const StmtPtr& s, Direction dir,
                const std::map<std::string, Type>& symbols, int& next_id);

// The specification embedding of a declaration: assume pre; body; assert post
// (coassume/coassert for coprocs), with the pre/post statements tagged.
StmtPtr embed_spec(const ProcDecl& decl, int& next_id);

// Embedding followed by desugaring: the statement checked by verification.
StmtPtr verification_body(const ProcDecl& decl, int& next_id);

int max_stmt_id(const StmtPtr& s);

}  // namespace quiver
