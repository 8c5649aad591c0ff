#include "quiver/ast.hpp"

#include <sstream>

namespace quiver {

std::string type_name(Type t) {
  switch (t) {
    case Type::Bool: return "Bool";
    case Type::Int: return "Int";
    case Type::UInt: return "UInt";
    case Type::UReal: return "UReal";
    case Type::EUReal: return "EUReal";
  }
  return "?";
}

std::optional<Type> type_from_name(const std::string& s) {
  if (s == "Bool") return Type::Bool;
  if (s == "Int") return Type::Int;
  if (s == "UInt") return Type::UInt;
  if (s == "UReal") return Type::UReal;
  if (s == "EUReal") return Type::EUReal;
  return std::nullopt;
}

bool is_numeric(Type t) { return t != Type::Bool; }

bool coercible(Type from, Type to) {
  if (from == to) return true;
  switch (from) {
    case Type::UInt:
      return to == Type::Int || to == Type::UReal || to == Type::EUReal;
    case Type::UReal:
      return to == Type::EUReal;
    default:
      return false;
  }
}

std::string Span::to_string() const {
  std::ostringstream os;
  os << line << ":" << col;
  return os.str();
}

namespace {

// Least common type of two numeric operands, if any.
std::optional<Type> join(Type a, Type b) {
  if (a == b) return a;
  if (coercible(a, b)) return b;
  if (coercible(b, a)) return a;
  // UInt bridges Int and UReal but those two do not join.
  return std::nullopt;
}

Type join_or_throw(const ExprPtr& a, const ExprPtr& b, const char* what) {
  if (!is_numeric(a->type) || !is_numeric(b->type))
    throw TypeError(std::string(what) + ": numeric operands required", a->span);
  auto j = join(a->type, b->type);
  if (!j) throw TypeError(std::string(what) + ": incompatible operand types " +
                              type_name(a->type) + " and " + type_name(b->type),
                          a->span);
  return *j;
}

void require_bool(const ExprPtr& e, const char* what) {
  if (e->type != Type::Bool)
    throw TypeError(std::string(what) + ": Bool operand required", e->span);
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr Expr::mk_bool(bool b) {
  Expr e;
  e.kind = ExprKind::BoolLit;
  e.type = Type::Bool;
  e.bval = b;
  return make(std::move(e));
}

ExprPtr Expr::mk_rat(Rat r) {
  r.canonicalize();
  Expr e;
  e.kind = ExprKind::RatLit;
  if (rat_is_integer(r))
    e.type = r >= 0 ? Type::UInt : Type::Int;
  else if (r >= 0)
    e.type = Type::UReal;
  else
    throw TypeError("negative non-integer literal is not typeable", {});
  e.rat = std::move(r);
  return make(std::move(e));
}

ExprPtr Expr::mk_inf() {
  Expr e;
  e.kind = ExprKind::InfLit;
  e.type = Type::EUReal;
  return make(std::move(e));
}

ExprPtr Expr::mk_var(std::string name, Type t) {
  Expr e;
  e.kind = ExprKind::Var;
  e.type = t;
  e.var = std::move(name);
  return make(std::move(e));
}

ExprPtr Expr::mk_not(ExprPtr a) {
  require_bool(a, "!");
  Expr e;
  e.kind = ExprKind::Not;
  e.type = Type::Bool;
  e.args = {std::move(a)};
  return make(std::move(e));
}

ExprPtr Expr::mk_and(ExprPtr a, ExprPtr b) {
  require_bool(a, "&&");
  require_bool(b, "&&");
  Expr e;
  e.kind = ExprKind::And;
  e.type = Type::Bool;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_or(ExprPtr a, ExprPtr b) {
  require_bool(a, "||");
  require_bool(b, "||");
  Expr e;
  e.kind = ExprKind::Or;
  e.type = Type::Bool;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_cmp(CmpOp op, ExprPtr a, ExprPtr b) {
  if (a->type == Type::Bool && b->type == Type::Bool) {
    if (op != CmpOp::Eq && op != CmpOp::Ne)
      throw TypeError("ordered comparison on Bool", a->span);
  } else {
    join_or_throw(a, b, "comparison");
  }
  Expr e;
  e.kind = ExprKind::Cmp;
  e.type = Type::Bool;
  e.cmp = op;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_add(ExprPtr a, ExprPtr b) {
  Type t = join_or_throw(a, b, "+");
  Expr e;
  e.kind = ExprKind::Add;
  e.type = t;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_sub(ExprPtr a, ExprPtr b) {
  if (!coercible(a->type, Type::Int) || !coercible(b->type, Type::Int))
    throw TypeError("-: integer operands required", a->span);
  Expr e;
  e.kind = ExprKind::Sub;
  e.type = Type::Int;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_mul(ExprPtr a, ExprPtr b) {
  Type t = join_or_throw(a, b, "*");
  Expr e;
  e.kind = ExprKind::Mul;
  e.type = t;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_ite(ExprPtr c, ExprPtr a, ExprPtr b) {
  require_bool(c, "ite");
  Type t;
  if (a->type == Type::Bool && b->type == Type::Bool)
    t = Type::Bool;
  else
    t = join_or_throw(a, b, "ite");
  Expr e;
  e.kind = ExprKind::Ite;
  e.type = t;
  e.args = {std::move(c), std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_embed(ExprPtr b) {
  require_bool(b, "embed");
  Expr e;
  e.kind = ExprKind::Embed;
  e.type = Type::EUReal;
  e.args = {std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_iverson(ExprPtr b) {
  require_bool(b, "[.]");
  Expr e;
  e.kind = ExprKind::Iverson;
  e.type = Type::UReal;
  e.args = {std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_min(ExprPtr a, ExprPtr b) {
  Type t = join_or_throw(a, b, "min");
  Expr e;
  e.kind = ExprKind::Min;
  e.type = t;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_max(ExprPtr a, ExprPtr b) {
  Type t = join_or_throw(a, b, "max");
  Expr e;
  e.kind = ExprKind::Max;
  e.type = t;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_implies(ExprPtr a, ExprPtr b) {
  join_or_throw(a, b, "==>");
  Expr e;
  e.kind = ExprKind::Implies;
  e.type = Type::EUReal;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_coimplies(ExprPtr a, ExprPtr b) {
  join_or_throw(a, b, "~~>");
  Expr e;
  e.kind = ExprKind::CoImplies;
  e.type = Type::EUReal;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mk_validate(ExprPtr a) {
  if (!is_numeric(a->type)) throw TypeError("validate: numeric operand", a->span);
  Expr e;
  e.kind = ExprKind::Validate;
  e.type = Type::EUReal;
  e.args = {std::move(a)};
  return make(std::move(e));
}

ExprPtr Expr::mk_covalidate(ExprPtr a) {
  if (!is_numeric(a->type)) throw TypeError("covalidate: numeric operand", a->span);
  Expr e;
  e.kind = ExprKind::CoValidate;
  e.type = Type::EUReal;
  e.args = {std::move(a)};
  return make(std::move(e));
}

ExprPtr Expr::mk_inf_quant(std::string x, Type t, ExprPtr body) {
  if (!is_numeric(body->type)) throw TypeError("inf: numeric body", body->span);
  Expr e;
  e.kind = ExprKind::Inf;
  e.type = Type::EUReal;
  e.var = std::move(x);
  e.bound_type = t;
  e.args = {std::move(body)};
  return make(std::move(e));
}

ExprPtr Expr::mk_sup_quant(std::string x, Type t, ExprPtr body) {
  if (!is_numeric(body->type)) throw TypeError("sup: numeric body", body->span);
  Expr e;
  e.kind = ExprKind::Sup;
  e.type = Type::EUReal;
  e.var = std::move(x);
  e.bound_type = t;
  e.args = {std::move(body)};
  return make(std::move(e));
}

ExprPtr Expr::mk_subst(ExprPtr body, std::string x, ExprPtr repl) {
  Expr e;
  e.kind = ExprKind::Subst;
  e.type = body->type;
  e.var = std::move(x);
  e.args = {std::move(body), std::move(repl)};
  return make(std::move(e));
}

namespace {
void free_vars_rec(const ExprPtr& e, std::map<std::string, Type>& out,
                   std::vector<std::string>& bound) {
  auto is_bound = [&](const std::string& v) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      if (*it == v) return true;
    return false;
  };
  switch (e->kind) {
    case ExprKind::Var:
      if (!is_bound(e->var)) out.emplace(e->var, e->type);
      return;
    case ExprKind::Inf:
    case ExprKind::Sup:
      bound.push_back(e->var);
      free_vars_rec(e->args[0], out, bound);
      bound.pop_back();
      return;
    case ExprKind::Subst:
      // body's occurrences of var are replaced by args[1]
      free_vars_rec(e->args[1], out, bound);
      bound.push_back(e->var);
      free_vars_rec(e->args[0], out, bound);
      bound.pop_back();
      // Variables of the body other than e->var stay free; the pass above
      // with var bound already collected them.
      return;
    default:
      for (const auto& a : e->args) free_vars_rec(a, out, bound);
      return;
  }
}
}  // namespace

void free_vars(const ExprPtr& e, std::map<std::string, Type>& out) {
  std::vector<std::string> bound;
  free_vars_rec(e, out, bound);
}

bool Stmt::has_annotation(const std::string& name) const {
  return find_annotation(name) != nullptr;
}

const Annotation* Stmt::find_annotation(const std::string& name) const {
  for (const auto& a : annotations)
    if (a.name == name) return &a;
  return nullptr;
}

StmtPtr mk_stmt(Stmt s) { return std::make_shared<const Stmt>(std::move(s)); }

StmtPtr mk_block(std::vector<StmtPtr> stmts, Span span) {
  Stmt s;
  s.kind = StmtKind::Block;
  s.stmts = std::move(stmts);
  s.span = span;
  return mk_stmt(std::move(s));
}

void visit_stmts(const StmtPtr& s, const std::function<void(const Stmt&)>& f) {
  if (!s) return;
  f(*s);
  for (const auto& c : s->stmts) visit_stmts(c, f);
  visit_stmts(s->s1, f);
  visit_stmts(s->s2, f);
}

}  // namespace quiver
