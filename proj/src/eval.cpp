#include "quiver/eval.hpp"

#include <sstream>

namespace quiver {

std::string value_to_string(const Value& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  if (std::holds_alternative<Rat>(v)) return rat_to_string(std::get<Rat>(v));
  return std::get<ExtReal>(v).to_string();
}

bool value_eq(const Value& a, const Value& b) {
  if (a.index() != b.index()) {
    // Rat vs ExtReal may denote the same number.
    const Rat* r = std::get_if<Rat>(&a) ? std::get_if<Rat>(&a) : std::get_if<Rat>(&b);
    const ExtReal* e =
        std::get_if<ExtReal>(&a) ? std::get_if<ExtReal>(&a) : std::get_if<ExtReal>(&b);
    if (r && e) return !e->is_infinite() && e->value() == *r;
    return false;
  }
  if (std::holds_alternative<bool>(a)) return std::get<bool>(a) == std::get<bool>(b);
  if (std::holds_alternative<Rat>(a)) return std::get<Rat>(a) == std::get<Rat>(b);
  return std::get<ExtReal>(a) == std::get<ExtReal>(b);
}

const Value& State::get(const std::string& name) const {
  auto it = vars.find(name);
  if (it == vars.end()) throw UnboundVariable("unbound variable: " + name);
  return it->second;
}

State State::with(const std::string& name, Value v) const {
  State s = *this;
  s.vars[name] = std::move(v);
  return s;
}

const std::vector<Value>& FiniteDomains::values_for(const std::string& var,
                                                    Type t) const {
  auto iv = by_var.find(var);
  if (iv != by_var.end()) return iv->second;
  auto it = by_type.find(t);
  if (it == by_type.end())
    throw NonEnumerableDomain("no finite domain for type " + type_name(t));
  return it->second;
}

FiniteDomains FiniteDomains::booleans() {
  FiniteDomains d;
  d.by_type[Type::Bool] = {Value(true), Value(false)};
  return d;
}

FiniteDomains FiniteDomains::small(long lo, long hi) {
  FiniteDomains d = booleans();
  std::vector<Value> ints, uints, ureals, eureals;
  for (long v = lo; v <= hi; ++v) ints.emplace_back(Rat(v));
  for (long v = std::max(0L, lo); v <= hi; ++v) {
    uints.emplace_back(Rat(v));
    ureals.emplace_back(Rat(v));
    eureals.emplace_back(ExtReal(Rat(v)));
  }
  ureals.emplace_back(Rat(1, 2));
  eureals.emplace_back(ExtReal(Rat(1, 2)));
  eureals.emplace_back(ExtReal::infinity());
  d.by_type[Type::Int] = ints;
  d.by_type[Type::UInt] = uints;
  d.by_type[Type::UReal] = ureals;
  d.by_type[Type::EUReal] = eureals;
  return d;
}

std::vector<State> enumerate_states(const std::map<std::string, Type>& vars,
                                    const FiniteDomains& dom) {
  std::vector<State> states;
  states.emplace_back();
  for (const auto& [name, type] : vars) {
    const auto& values = dom.values_for(name, type);
    std::vector<State> next;
    next.reserve(states.size() * values.size());
    for (const auto& st : states)
      for (const auto& v : values) next.push_back(st.with(name, v));
    states = std::move(next);
  }
  return states;
}

namespace {

// Numeric coercions for arithmetic and comparisons.
ExtReal to_extreal(const Value& v) {
  if (std::holds_alternative<ExtReal>(v)) return std::get<ExtReal>(v);
  if (std::holds_alternative<Rat>(v)) {
    const Rat& r = std::get<Rat>(v);
    if (r < 0) throw EvalError("negative value used as expectation");
    return ExtReal(r);
  }
  throw EvalError("boolean used as expectation");
}

bool to_bool(const Value& v) {
  if (!std::holds_alternative<bool>(v)) throw EvalError("expected Bool value");
  return std::get<bool>(v);
}

// Numeric pair comparison handling Rat vs ExtReal uniformly. Returns
// -1, 0, 1 with infinity greater than any rational.
int cmp_values(const Value& a, const Value& b) {
  bool ainf = std::holds_alternative<ExtReal>(a) && std::get<ExtReal>(a).is_infinite();
  bool binf = std::holds_alternative<ExtReal>(b) && std::get<ExtReal>(b).is_infinite();
  if (ainf || binf) return ainf == binf ? 0 : (ainf ? 1 : -1);
  auto num = [](const Value& v) -> Rat {
    if (std::holds_alternative<Rat>(v)) return std::get<Rat>(v);
    return std::get<ExtReal>(v).value();
  };
  Rat x = num(a), y = num(b);
  return x < y ? -1 : (x == y ? 0 : 1);
}

Value eval_rec(const ExprPtr& e, const State& sigma, const FiniteDomains& dom);

// Arithmetic on mixed Rat/ExtReal values, staying in Rat when possible so
// integer-typed expressions keep exact integer values.
Value add_values(const Value& a, const Value& b) {
  if (std::holds_alternative<Rat>(a) && std::holds_alternative<Rat>(b))
    return Value(std::get<Rat>(a) + std::get<Rat>(b));
  return Value(to_extreal(a) + to_extreal(b));
}

Value mul_values(const Value& a, const Value& b) {
  if (std::holds_alternative<Rat>(a) && std::holds_alternative<Rat>(b))
    return Value(std::get<Rat>(a) * std::get<Rat>(b));
  return Value(to_extreal(a) * to_extreal(b));
}

Value eval_quant(const ExprPtr& e, const State& sigma, const FiniteDomains& dom,
                 bool is_inf) {
  const auto& values = dom.values_for(e->var, e->bound_type);
  if (values.empty()) throw NonEnumerableDomain("empty domain for quantifier");
  ExtReal acc = is_inf ? ExtReal::infinity() : ExtReal::zero();
  for (const auto& v : values) {
    ExtReal x = to_extreal(eval_rec(e->args[0], sigma.with(e->var, v), dom));
    acc = is_inf ? emin(acc, x) : emax(acc, x);
  }
  return Value(acc);
}

Value eval_rec(const ExprPtr& e, const State& sigma, const FiniteDomains& dom) {
  switch (e->kind) {
    case ExprKind::BoolLit: return Value(e->bval);
    case ExprKind::RatLit: return Value(e->rat);
    case ExprKind::InfLit: return Value(ExtReal::infinity());
    case ExprKind::Var: return sigma.get(e->var);
    case ExprKind::Not: return Value(!to_bool(eval_rec(e->args[0], sigma, dom)));
    case ExprKind::And:
      return Value(to_bool(eval_rec(e->args[0], sigma, dom)) &&
                   to_bool(eval_rec(e->args[1], sigma, dom)));
    case ExprKind::Or:
      return Value(to_bool(eval_rec(e->args[0], sigma, dom)) ||
                   to_bool(eval_rec(e->args[1], sigma, dom)));
    case ExprKind::Cmp: {
      Value a = eval_rec(e->args[0], sigma, dom);
      Value b = eval_rec(e->args[1], sigma, dom);
      if (std::holds_alternative<bool>(a) || std::holds_alternative<bool>(b)) {
        bool eq = to_bool(a) == to_bool(b);
        if (e->cmp == CmpOp::Eq) return Value(eq);
        if (e->cmp == CmpOp::Ne) return Value(!eq);
        throw EvalError("ordered comparison on Bool");
      }
      int c = cmp_values(a, b);
      switch (e->cmp) {
        case CmpOp::Eq: return Value(c == 0);
        case CmpOp::Ne: return Value(c != 0);
        case CmpOp::Le: return Value(c <= 0);
        case CmpOp::Lt: return Value(c < 0);
        case CmpOp::Ge: return Value(c >= 0);
        case CmpOp::Gt: return Value(c > 0);
      }
      throw EvalError("bad comparison");
    }
    case ExprKind::Add:
      return add_values(eval_rec(e->args[0], sigma, dom),
                        eval_rec(e->args[1], sigma, dom));
    case ExprKind::Sub: {
      Value a = eval_rec(e->args[0], sigma, dom);
      Value b = eval_rec(e->args[1], sigma, dom);
      if (!std::holds_alternative<Rat>(a) || !std::holds_alternative<Rat>(b))
        throw EvalError("subtraction on non-integer values");
      return Value(std::get<Rat>(a) - std::get<Rat>(b));
    }
    case ExprKind::Mul:
      return mul_values(eval_rec(e->args[0], sigma, dom),
                        eval_rec(e->args[1], sigma, dom));
    case ExprKind::Ite:
      return to_bool(eval_rec(e->args[0], sigma, dom))
                 ? eval_rec(e->args[1], sigma, dom)
                 : eval_rec(e->args[2], sigma, dom);
    case ExprKind::Embed:
      return Value(to_bool(eval_rec(e->args[0], sigma, dom)) ? ExtReal::infinity()
                                                             : ExtReal::zero());
    case ExprKind::Iverson:
      return Value(to_bool(eval_rec(e->args[0], sigma, dom)) ? Rat(1) : Rat(0));
    case ExprKind::Min: {
      Value a = eval_rec(e->args[0], sigma, dom);
      Value b = eval_rec(e->args[1], sigma, dom);
      return cmp_values(a, b) <= 0 ? a : b;
    }
    case ExprKind::Max: {
      Value a = eval_rec(e->args[0], sigma, dom);
      Value b = eval_rec(e->args[1], sigma, dom);
      return cmp_values(a, b) >= 0 ? a : b;
    }
    case ExprKind::Implies: {
      Value a = eval_rec(e->args[0], sigma, dom);
      Value b = eval_rec(e->args[1], sigma, dom);
      if (cmp_values(a, b) <= 0) return Value(ExtReal::infinity());
      return b;
    }
    case ExprKind::CoImplies: {
      Value a = eval_rec(e->args[0], sigma, dom);
      Value b = eval_rec(e->args[1], sigma, dom);
      if (cmp_values(a, b) >= 0) return Value(ExtReal::zero());
      return b;
    }
    case ExprKind::Validate:
      return Value(to_extreal(eval_rec(e->args[0], sigma, dom)).validate());
    case ExprKind::CoValidate:
      return Value(to_extreal(eval_rec(e->args[0], sigma, dom)).covalidate());
    case ExprKind::Inf: return eval_quant(e, sigma, dom, true);
    case ExprKind::Sup: return eval_quant(e, sigma, dom, false);
    case ExprKind::Subst: {
      // Call-by-value application of the pending substitution keeps the
      // semantics capture-avoiding: the state carries values, not terms.
      Value v = eval_rec(e->args[1], sigma, dom);
      return eval_rec(e->args[0], sigma.with(e->var, std::move(v)), dom);
    }
  }
  throw EvalError("bad expression kind");
}

}  // namespace

Value eval_expr(const ExprPtr& e, const State& sigma, const FiniteDomains& dom) {
  return eval_rec(e, sigma, dom);
}

ExtReal evaluate(const ExprPtr& e, const State& sigma, const FiniteDomains& dom) {
  return to_extreal(eval_rec(e, sigma, dom));
}

CompareResult compare_leq(const ExprPtr& x, const ExprPtr& y,
                          const std::map<std::string, Type>& vars,
                          const FiniteDomains& dom) {
  for (const auto& sigma : enumerate_states(vars, dom)) {
    ExtReal a = evaluate(x, sigma, dom);
    ExtReal b = evaluate(y, sigma, dom);
    if (!(a <= b)) return {false, sigma};
  }
  return {true, {}};
}

}  // namespace quiver
