#pragma once

#include "quiver/ast.hpp"

namespace quiver {

// Emits the specification statement encoding, role-tagged:
//   assert X; havoc v...; validate; assume Y       (lower bounds)
// and the dual coassert/cohavoc/covalidate/coassume form for upper bounds.
StmtPtr encode_spec_statement(const std::vector<std::string>& vars,
                              const std::map<std::string, Type>& symbols,
                              const ExprPtr& pre, const ExprPtr& post,
                              Direction dir, Span span, int& next_id);

// Emits the Park induction encoding of `while b { C }` with invariant I:
//   assert I; havoc v...; validate; assume I;
//   if b { C; assert I; assume embed(false) } else { }
// dualized for upper bounds. v is the write set of C joined with the guard
// variables. The inner `if` is still sugar; callers desugar the result.
StmtPtr encode_park(const ExprPtr& guard, const StmtPtr& body, const ExprPtr& inv,
                    const std::map<std::string, Type>& symbols, Direction dir,
                    Span span, int& next_id);

// Variables written by a statement (assignments, havocs, declarations).
std::vector<std::string> write_set(const StmtPtr& s);

}  // namespace quiver
