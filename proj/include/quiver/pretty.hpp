#pragma once

#include <string>

#include "quiver/ast.hpp"

namespace quiver {

std::string print_expr(const ExprPtr& e);
std::string print_stmt(const StmtPtr& s, int indent = 0);
std::string print_proc(const ProcDecl& d);
std::string print_program(const Program& p);

// Structural equality ignoring spans, ids and origins.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool stmt_equal(const StmtPtr& a, const StmtPtr& b);

}  // namespace quiver
