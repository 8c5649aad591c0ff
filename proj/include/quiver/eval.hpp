#pragma once

#include <map>
#include <variant>
#include <vector>

#include "quiver/ast.hpp"

namespace quiver {

// Runtime values: Bool, exact integer/rational (Int/UInt/UReal), ExtReal.
using Value = std::variant<bool, Rat, ExtReal>;

std::string value_to_string(const Value& v);
bool value_eq(const Value& a, const Value& b);

// A total map from declared variables to values.
struct State {
  std::map<std::string, Value> vars;

  const Value& get(const std::string& name) const;
  State with(const std::string& name, Value v) const;
};

// Finite enumerations per type, with optional per-variable overrides.
struct FiniteDomains {
  std::map<Type, std::vector<Value>> by_type;
  std::map<std::string, std::vector<Value>> by_var;

  const std::vector<Value>& values_for(const std::string& var, Type t) const;
  bool covers(Type t) const { return by_type.count(t) > 0; }

  static FiniteDomains booleans();
  // Bools plus small integer ranges [lo, hi] for Int/UInt.
  static FiniteDomains small(long lo, long hi);
};

// Enumerates all states over the given variables.
std::vector<State> enumerate_states(const std::map<std::string, Type>& vars,
                                    const FiniteDomains& dom);

// Exact evaluation of an expression in a state. Quantifiers range over the
// finite domains; an absent domain raises NonEnumerableDomain.
Value eval_expr(const ExprPtr& e, const State& sigma, const FiniteDomains& dom);

// Evaluation of an expectation: numeric result coerced into ExtReal.
ExtReal evaluate(const ExprPtr& e, const State& sigma, const FiniteDomains& dom);

struct CompareResult {
  bool holds = true;
  State witness;  // valid when !holds
};

// Exhaustive pointwise check of X <= Y over all states of the domain.
CompareResult compare_leq(const ExprPtr& x, const ExprPtr& y,
                          const std::map<std::string, Type>& vars,
                          const FiniteDomains& dom);

}  // namespace quiver
