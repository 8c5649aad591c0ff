#pragma once

#include "quiver/ast.hpp"

namespace quiver {

// Eager capture-avoiding substitution e[x/t]. Bound variables are renamed
// when they would capture a free variable of t.
ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& t);

// Structurally rebuilds a node with new arguments (types recomputed).
ExprPtr rebuild(const Expr& proto, std::vector<ExprPtr> args);

}  // namespace quiver
