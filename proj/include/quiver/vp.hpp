#pragma once

#include "quiver/ast.hpp"

namespace quiver {

struct SugarNotDesugared : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VpResult {
  ExprPtr expectation;
  // Subterms introduced for verification statements, keyed by node identity.
  std::map<const Expr*, Span> provenance;
};

// The backward verification pre-expectation transformer of a desugared
// statement. Substitutions stay lazy (Subst nodes) so the result is a DAG
// sharing the post across probabilistic branches.
VpResult vp(const StmtPtr& s, const ExprPtr& post);

}  // namespace quiver
