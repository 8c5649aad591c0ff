#include "quiver/oracle.hpp"

namespace quiver {

namespace {

struct OracleCtx {
  const FiniteDomains& dom;
  std::uint64_t budget;

  void spend() {
    if (budget == 0) throw DomainTooLarge("oracle evaluation budget exhausted");
    --budget;
  }
};

using Cont = std::function<ExtReal(const State&)>;

ExtReal go(OracleCtx& ctx, const StmtPtr& s, const State& sigma, const Cont& k);

ExtReal go_seq(OracleCtx& ctx, const std::vector<StmtPtr>& stmts, size_t i,
               const State& sigma, const Cont& k) {
  if (i == stmts.size()) return k(sigma);
  return go(ctx, stmts[i], sigma,
            [&, i](const State& s2) { return go_seq(ctx, stmts, i + 1, s2, k); });
}

ExtReal go(OracleCtx& ctx, const StmtPtr& s, const State& sigma, const Cont& k) {
  ctx.spend();
  switch (s->kind) {
    case StmtKind::Block:
      return go_seq(ctx, s->stmts, 0, sigma, k);
    case StmtKind::VarDecl:
    case StmtKind::RandAssign: {
      ExtReal acc = ExtReal::zero();
      for (const auto& b : s->dist) {
        Value v = eval_expr(b.value, sigma, ctx.dom);
        // 0 * infinity = 0: zero-probability branches contribute nothing
        acc = acc + ExtReal(b.prob) * k(sigma.with(s->var, v));
      }
      return acc;
    }
    case StmtKind::Assign: {
      Value v = eval_expr(s->expr, sigma, ctx.dom);
      return k(sigma.with(s->var, v));
    }
    case StmtKind::Reward: {
      ExtReal a = evaluate(s->expr, sigma, ctx.dom);
      return k(sigma) + a;
    }
    case StmtKind::Demonic:
      return emin(go(ctx, s->s1, sigma, k), go(ctx, s->s2, sigma, k));
    case StmtKind::Angelic:
      return emax(go(ctx, s->s1, sigma, k), go(ctx, s->s2, sigma, k));
    case StmtKind::Assert:
      return emin(evaluate(s->expr, sigma, ctx.dom), k(sigma));
    case StmtKind::CoAssert:
      return emax(evaluate(s->expr, sigma, ctx.dom), k(sigma));
    case StmtKind::Assume:
      return eimplies(evaluate(s->expr, sigma, ctx.dom), k(sigma));
    case StmtKind::CoAssume:
      return ecoimplies(evaluate(s->expr, sigma, ctx.dom), k(sigma));
    case StmtKind::Havoc: {
      ExtReal acc = ExtReal::infinity();
      for (const auto& v : ctx.dom.values_for(s->var, s->var_type))
        acc = emin(acc, k(sigma.with(s->var, v)));
      return acc;
    }
    case StmtKind::CoHavoc: {
      ExtReal acc = ExtReal::zero();
      for (const auto& v : ctx.dom.values_for(s->var, s->var_type))
        acc = emax(acc, k(sigma.with(s->var, v)));
      return acc;
    }
    case StmtKind::Validate:
      return k(sigma).validate();
    case StmtKind::CoValidate:
      return k(sigma).covalidate();
    case StmtKind::While:
      throw ContainsLoop("vp_oracle on a loop");
    case StmtKind::If:
    case StmtKind::Spec:
      throw ContainsLoop("vp_oracle on sugared statement");
  }
  throw ContainsLoop("vp_oracle: bad statement kind");
}

}  // namespace

ExtReal vp_oracle(const StmtPtr& s, const ExprPtr& post, const State& sigma,
                  const FiniteDomains& dom, std::uint64_t budget) {
  OracleCtx ctx{dom, budget};
  return go(ctx, s, sigma,
            [&](const State& s2) { return evaluate(post, s2, dom); });
}

bool selection_respects_choices(const std::vector<Candidate>& cands,
                                const std::vector<bool>& enabled) {
  for (size_t i = 0; i < cands.size(); ++i) {
    if (!cands[i].is_branch() || enabled[i]) continue;
    bool partner_enabled = false;
    for (size_t j = 0; j < cands.size(); ++j) {
      if (j != i && cands[j].is_branch() && cands[j].stmt_id == cands[i].stmt_id &&
          enabled[j])
        partner_enabled = true;
    }
    if (!partner_enabled) return false;
  }
  return true;
}

namespace {

StmtPtr erase_rec(const StmtPtr& s, const std::vector<Candidate>& cands,
                  const std::vector<bool>& enabled) {
  // atom candidates: erased entirely when disabled
  for (size_t i = 0; i < cands.size(); ++i) {
    if (!cands[i].is_branch() && cands[i].stmt_id == s->id && !enabled[i])
      return nullptr;
  }
  switch (s->kind) {
    case StmtKind::Block: {
      std::vector<StmtPtr> out;
      for (const auto& c : s->stmts) {
        StmtPtr e = erase_rec(c, cands, enabled);
        if (e) out.push_back(e);
      }
      Stmt copy = *s;
      copy.stmts = std::move(out);
      return mk_stmt(std::move(copy));
    }
    case StmtKind::Demonic:
    case StmtKind::Angelic: {
      bool b0 = true, b1 = true;
      for (size_t i = 0; i < cands.size(); ++i) {
        if (cands[i].is_branch() && cands[i].stmt_id == s->id) {
          if (cands[i].branch == 0) b0 = enabled[i];
          if (cands[i].branch == 1) b1 = enabled[i];
        }
      }
      StmtPtr s1 = erase_rec(s->s1, cands, enabled);
      StmtPtr s2 = erase_rec(s->s2, cands, enabled);
      if (!s1) s1 = mk_block({});
      if (!s2) s2 = mk_block({});
      if (b0 && b1) {
        Stmt copy = *s;
        copy.s1 = s1;
        copy.s2 = s2;
        return mk_stmt(std::move(copy));
      }
      if (b0) return s1;
      if (b1) return s2;
      // both disabled: invalid; caller filters via selection_respects_choices
      return mk_block({});
    }
    default:
      return s;
  }
}

}  // namespace

StmtPtr erase_candidates(const StmtPtr& s, const std::vector<Candidate>& cands,
                         const std::vector<bool>& enabled) {
  StmtPtr r = erase_rec(s, cands, enabled);
  return r ? r : mk_block({});
}

SliceEnumeration enumerate_slices(const StmtPtr& s,
                                  const std::vector<Candidate>& cands,
                                  SliceDirection goal, Direction dir,
                                  const std::map<std::string, Type>& vars,
                                  const FiniteDomains& dom) {
  if (cands.size() > 12) throw TooManyCandidates("more than 12 candidates");
  const std::uint32_t n = static_cast<std::uint32_t>(cands.size());
  ExtReal top = dir == Direction::Proc ? ExtReal::infinity() : ExtReal::zero();
  ExprPtr post = dir == Direction::Proc ? Expr::mk_inf() : Expr::mk_rat(Rat(0));

  std::vector<State> states = enumerate_states(vars, dom);
  auto errs = [&](const StmtPtr& prog, const State& sigma) {
    return vp_oracle(prog, post, sigma, dom) != top;
  };

  // counterexample set of the original, for the transfer condition
  std::vector<bool> orig_err;
  orig_err.reserve(states.size());
  for (const auto& st : states) orig_err.push_back(errs(s, st));

  SliceEnumeration out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> enabled(n);
    for (std::uint32_t i = 0; i < n; ++i) enabled[i] = (mask >> i) & 1u;
    if (!selection_respects_choices(cands, enabled)) continue;
    ++out.total_checked;
    StmtPtr sliced = erase_candidates(s, cands, enabled);
    if (goal == SliceDirection::FindVerifying) {
      bool ok = true;
      for (const auto& st : states)
        if (errs(sliced, st)) {
          ok = false;
          break;
        }
      if (ok) out.valid.insert(mask);
    } else {
      // error-witnessing: some counterexample exists, and they all transfer
      bool some = false, transfer = true;
      for (size_t i = 0; i < states.size(); ++i) {
        bool e = errs(sliced, states[i]);
        some = some || e;
        if (e && !orig_err[i]) {
          transfer = false;
          break;
        }
      }
      if (some && transfer) out.valid.insert(mask);
    }
  }
  return out;
}

}  // namespace quiver
