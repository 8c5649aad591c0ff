#pragma once

#include <string>

#include "quiver/ast.hpp"

namespace quiver {

// Parses and elaborates a .qivl file: declarations are type-checked,
// distributions normalized, spans attached.
Program parse_program(const std::string& source, const std::string& filename = "");

// Parses a single expectation over the given symbols (used by tests).
ExprPtr parse_expectation(const std::string& source,
                          const std::map<std::string, Type>& symbols);

}  // namespace quiver
