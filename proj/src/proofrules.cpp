#include "quiver/proofrules.hpp"

#include <algorithm>
#include <set>

namespace quiver {

namespace {

StmtPtr tagged(Stmt s, StmtRole role, Span span, int& next_id) {
  s.origin = StmtOrigin::ProofRule;
  s.role = role;
  s.span = span;
  s.id = next_id++;
  return mk_stmt(std::move(s));
}

StmtPtr verification_stmt(StmtKind kind, ExprPtr e, StmtRole role, Span span,
                          int& next_id) {
  Stmt s;
  s.kind = kind;
  s.expr = std::move(e);
  return tagged(std::move(s), role, span, next_id);
}

StmtPtr havoc_stmt(bool co, const std::string& var, Type t, StmtRole role,
                   Span span, int& next_id) {
  Stmt s;
  s.kind = co ? StmtKind::CoHavoc : StmtKind::Havoc;
  s.var = var;
  s.var_type = t;
  return tagged(std::move(s), role, span, next_id);
}

StmtPtr bare_stmt(StmtKind kind, StmtRole role, Span span, int& next_id) {
  Stmt s;
  s.kind = kind;
  return tagged(std::move(s), role, span, next_id);
}

}  // namespace

std::vector<std::string> write_set(const StmtPtr& s) {
  std::set<std::string> vars;
  visit_stmts(s, [&](const Stmt& st) {
    switch (st.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign:
      case StmtKind::RandAssign:
      case StmtKind::Havoc:
      case StmtKind::CoHavoc:
        vars.insert(st.var);
        break;
      case StmtKind::Spec:
        for (const auto& v : st.vars_list) vars.insert(v);
        break;
      default:
        break;
    }
  });
  return {vars.begin(), vars.end()};
}

StmtPtr encode_spec_statement(const std::vector<std::string>& vars,
                              const std::map<std::string, Type>& symbols,
                              const ExprPtr& pre, const ExprPtr& post,
                              Direction dir, Span span, int& next_id) {
  bool co = dir == Direction::CoProc;
  std::vector<StmtPtr> seq;
  seq.push_back(verification_stmt(co ? StmtKind::CoAssert : StmtKind::Assert, pre,
                                  StmtRole::SpecPre, span, next_id));
  for (const auto& v : vars) {
    auto it = symbols.find(v);
    if (it == symbols.end())
      throw TypeError("spec modifies undeclared variable '" + v + "'", span);
    seq.push_back(havoc_stmt(co, v, it->second, StmtRole::SpecHavoc, span, next_id));
  }
  seq.push_back(bare_stmt(co ? StmtKind::CoValidate : StmtKind::Validate,
                          StmtRole::SpecValidate, span, next_id));
  seq.push_back(verification_stmt(co ? StmtKind::CoAssume : StmtKind::Assume, post,
                                  StmtRole::SpecPost, span, next_id));
  return mk_block(std::move(seq), span);
}

StmtPtr encode_park(const ExprPtr& guard, const StmtPtr& body, const ExprPtr& inv,
                    const std::map<std::string, Type>& symbols, Direction dir,
                    Span span, int& next_id) {
  bool co = dir == Direction::CoProc;

  std::vector<std::string> vars = write_set(body);
  std::map<std::string, Type> guard_vars;
  free_vars(guard, guard_vars);
  for (const auto& [v, t] : guard_vars) {
    (void)t;
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end());

  std::vector<StmtPtr> seq;
  seq.push_back(verification_stmt(co ? StmtKind::CoAssert : StmtKind::Assert, inv,
                                  StmtRole::ParkAssert1, span, next_id));
  for (const auto& v : vars) {
    auto it = symbols.find(v);
    if (it == symbols.end()) continue;  // loop-local declarations re-bind anyway
    seq.push_back(
        havoc_stmt(co, v, it->second, StmtRole::ParkHavoc, span, next_id));
  }
  seq.push_back(bare_stmt(co ? StmtKind::CoValidate : StmtKind::Validate,
                          StmtRole::ParkValidate, span, next_id));
  seq.push_back(verification_stmt(co ? StmtKind::CoAssume : StmtKind::Assume, inv,
                                  StmtRole::ParkAssumeI, span, next_id));

  // loop body followed by the inductivity check and the cut
  std::vector<StmtPtr> then_branch;
  then_branch.push_back(body);
  then_branch.push_back(verification_stmt(co ? StmtKind::CoAssert : StmtKind::Assert,
                                          inv, StmtRole::ParkAssert2, span,
                                          next_id));
  // assume embed(false) cuts everything after one iteration; the co form uses
  // the negated embedding, coassume embed(true).
  ExprPtr cut = Expr::mk_embed(Expr::mk_bool(co));
  then_branch.push_back(verification_stmt(co ? StmtKind::CoAssume : StmtKind::Assume,
                                          cut, StmtRole::ParkAssumeII, span,
                                          next_id));

  Stmt iff;
  iff.kind = StmtKind::If;
  iff.expr = guard;
  iff.s1 = mk_block(std::move(then_branch), span);
  iff.s2 = mk_block({}, span);
  iff.span = span;
  iff.origin = StmtOrigin::ProofRule;
  iff.id = next_id++;
  seq.push_back(mk_stmt(std::move(iff)));

  return mk_block(std::move(seq), span);
}

}  // namespace quiver
