#include "quiver/subst.hpp"

#include <set>

namespace quiver {

ExprPtr rebuild(const Expr& proto, std::vector<ExprPtr> args) {
  switch (proto.kind) {
    case ExprKind::BoolLit:
    case ExprKind::RatLit:
    case ExprKind::InfLit:
    case ExprKind::Var:
      return std::make_shared<const Expr>(proto);
    case ExprKind::Not: return Expr::mk_not(args[0]);
    case ExprKind::And: return Expr::mk_and(args[0], args[1]);
    case ExprKind::Or: return Expr::mk_or(args[0], args[1]);
    case ExprKind::Cmp: return Expr::mk_cmp(proto.cmp, args[0], args[1]);
    case ExprKind::Add: return Expr::mk_add(args[0], args[1]);
    case ExprKind::Sub: return Expr::mk_sub(args[0], args[1]);
    case ExprKind::Mul: return Expr::mk_mul(args[0], args[1]);
    case ExprKind::Ite: return Expr::mk_ite(args[0], args[1], args[2]);
    case ExprKind::Embed: return Expr::mk_embed(args[0]);
    case ExprKind::Iverson: return Expr::mk_iverson(args[0]);
    case ExprKind::Min: return Expr::mk_min(args[0], args[1]);
    case ExprKind::Max: return Expr::mk_max(args[0], args[1]);
    case ExprKind::Implies: return Expr::mk_implies(args[0], args[1]);
    case ExprKind::CoImplies: return Expr::mk_coimplies(args[0], args[1]);
    case ExprKind::Validate: return Expr::mk_validate(args[0]);
    case ExprKind::CoValidate: return Expr::mk_covalidate(args[0]);
    case ExprKind::Inf:
      return Expr::mk_inf_quant(proto.var, proto.bound_type, args[0]);
    case ExprKind::Sup:
      return Expr::mk_sup_quant(proto.var, proto.bound_type, args[0]);
    case ExprKind::Subst:
      return Expr::mk_subst(args[0], proto.var, args[1]);
  }
  throw std::logic_error("rebuild: bad kind");
}

namespace {

void collect_names(const ExprPtr& e, std::set<std::string>& out) {
  if (e->kind == ExprKind::Var || e->kind == ExprKind::Inf ||
      e->kind == ExprKind::Sup || e->kind == ExprKind::Subst)
    out.insert(e->var);
  for (const auto& a : e->args) collect_names(a, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

ExprPtr rename_bound(const ExprPtr& binder, const std::string& fresh);

ExprPtr subst_rec(const ExprPtr& e, const std::string& x, const ExprPtr& t,
                  const std::set<std::string>& avoid) {
  switch (e->kind) {
    case ExprKind::Var:
      if (e->var == x) return t;
      return e;
    case ExprKind::BoolLit:
    case ExprKind::RatLit:
    case ExprKind::InfLit:
      return e;
    case ExprKind::Inf:
    case ExprKind::Sup: {
      if (e->var == x) return e;  // bound occurrence shadows
      if (avoid.count(e->var)) {
        std::set<std::string> used = avoid;
        collect_names(e->args[0], used);
        used.insert(x);
        ExprPtr renamed = rename_bound(e, fresh_name(e->var, used));
        return subst_rec(renamed, x, t, avoid);
      }
      ExprPtr body = subst_rec(e->args[0], x, t, avoid);
      return rebuild(*e, {body});
    }
    case ExprKind::Subst: {
      ExprPtr repl = subst_rec(e->args[1], x, t, avoid);
      if (e->var == x) return rebuild(*e, {e->args[0], repl});
      if (avoid.count(e->var)) {
        // Materialize the pending substitution, then retry.
        ExprPtr body = substitute(e->args[0], e->var, e->args[1]);
        return subst_rec(body, x, t, avoid);
      }
      ExprPtr body = subst_rec(e->args[0], x, t, avoid);
      return rebuild(*e, {body, repl});
    }
    default: {
      std::vector<ExprPtr> args;
      args.reserve(e->args.size());
      for (const auto& a : e->args) args.push_back(subst_rec(a, x, t, avoid));
      return rebuild(*e, std::move(args));
    }
  }
}

ExprPtr rename_bound(const ExprPtr& binder, const std::string& fresh) {
  ExprPtr fv = Expr::mk_var(fresh, binder->bound_type);
  std::set<std::string> avoid;  // fresh by construction, nothing to avoid
  ExprPtr body = subst_rec(binder->args[0], binder->var, fv, avoid);
  Expr proto = *binder;
  proto.var = fresh;
  return rebuild(proto, {body});
}

}  // namespace

ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& t) {
  std::map<std::string, Type> fv;
  free_vars(t, fv);
  std::set<std::string> avoid;
  for (const auto& [name, _] : fv) avoid.insert(name);
  return subst_rec(e, x, t, avoid);
}

}  // namespace quiver
