#include "quiver/vp.hpp"

namespace quiver {

namespace {

struct VpBuilder {
  std::map<const Expr*, Span> provenance;

  ExprPtr track(ExprPtr e, Span span) {
    provenance[e.get()] = span;
    return e;
  }

  ExprPtr go(const StmtPtr& s, ExprPtr x) {
    switch (s->kind) {
      case StmtKind::Block: {
        for (auto it = s->stmts.rbegin(); it != s->stmts.rend(); ++it)
          x = go(*it, x);
        return x;
      }
      case StmtKind::VarDecl:
      case StmtKind::RandAssign: {
        ExprPtr sum;
        for (const auto& b : s->dist) {
          ExprPtr term = Expr::mk_mul(Expr::mk_rat(b.prob),
                                      Expr::mk_subst(x, s->var, b.value));
          sum = sum ? Expr::mk_add(sum, term) : term;
        }
        return sum ? sum : x;
      }
      case StmtKind::Assign:
        return Expr::mk_subst(x, s->var, s->expr);
      case StmtKind::Reward:
        return track(Expr::mk_add(x, s->expr), s->span);
      case StmtKind::Demonic:
        return Expr::mk_min(go(s->s1, x), go(s->s2, x));
      case StmtKind::Angelic:
        return Expr::mk_max(go(s->s1, x), go(s->s2, x));
      case StmtKind::Assert:
        return track(Expr::mk_min(s->expr, x), s->span);
      case StmtKind::CoAssert:
        return track(Expr::mk_max(s->expr, x), s->span);
      case StmtKind::Assume:
        return track(Expr::mk_implies(s->expr, x), s->span);
      case StmtKind::CoAssume:
        return track(Expr::mk_coimplies(s->expr, x), s->span);
      case StmtKind::Havoc:
        return Expr::mk_inf_quant(s->var, s->var_type, x);
      case StmtKind::CoHavoc:
        return Expr::mk_sup_quant(s->var, s->var_type, x);
      case StmtKind::Validate:
        return Expr::mk_validate(x);
      case StmtKind::CoValidate:
        return Expr::mk_covalidate(x);
      case StmtKind::If:
      case StmtKind::While:
      case StmtKind::Spec:
        throw SugarNotDesugared("vp of sugared statement at " +
                                s->span.to_string());
    }
    throw SugarNotDesugared("vp: bad statement kind");
  }
};

}  // namespace

VpResult vp(const StmtPtr& s, const ExprPtr& post) {
  VpBuilder b;
  ExprPtr e = b.go(s, post);
  return {std::move(e), std::move(b.provenance)};
}

}  // namespace quiver
