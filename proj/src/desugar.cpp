#include "quiver/desugar.hpp"

#include <algorithm>

#include "quiver/proofrules.hpp"

namespace quiver {

namespace {

StmtPtr guard_stmt(bool co, ExprPtr cond, Span span, int& next_id) {
  Stmt g;
  g.kind = co ? StmtKind::CoAssume : StmtKind::Assume;
  // co-verification statements carry the negated embedding
  g.expr = Expr::mk_embed(co ? Expr::mk_not(cond) : cond);
  g.span = span;
  g.origin = StmtOrigin::DesugarGuard;
  g.id = next_id++;
  return mk_stmt(std::move(g));
}

StmtPtr desugar_rec(const StmtPtr& s, Direction dir,
                    const std::map<std::string, Type>& symbols, int& next_id) {
  switch (s->kind) {
    case StmtKind::Block: {
      std::vector<StmtPtr> out;
      out.reserve(s->stmts.size());
      for (const auto& c : s->stmts) out.push_back(desugar_rec(c, dir, symbols, next_id));
      Stmt copy = *s;
      copy.stmts = std::move(out);
      return mk_stmt(std::move(copy));
    }
    case StmtKind::Demonic:
    case StmtKind::Angelic: {
      Stmt copy = *s;
      copy.s1 = desugar_rec(s->s1, dir, symbols, next_id);
      copy.s2 = desugar_rec(s->s2, dir, symbols, next_id);
      return mk_stmt(std::move(copy));
    }
    case StmtKind::If: {
      bool co = dir == Direction::CoProc;
      StmtPtr s1 = desugar_rec(s->s1, dir, symbols, next_id);
      StmtPtr s2 = desugar_rec(s->s2, dir, symbols, next_id);
      Stmt choice;
      choice.kind = co ? StmtKind::Angelic : StmtKind::Demonic;
      choice.span = s->span;
      choice.origin = s->origin == StmtOrigin::User ? StmtOrigin::DesugarGuard
                                                    : s->origin;
      choice.id = next_id++;
      choice.s1 = mk_block({guard_stmt(co, s->expr, s->span, next_id), s1}, s->span);
      choice.s2 = mk_block(
          {guard_stmt(co, Expr::mk_not(s->expr), s->span, next_id), s2}, s->span);
      return mk_stmt(std::move(choice));
    }
    case StmtKind::While: {
      const Annotation* inv = s->find_annotation("invariant");
      if (!inv)
        throw MissingInvariant("while loop without @invariant annotation", s->span);
      StmtPtr body = desugar_rec(s->s1, dir, symbols, next_id);
      StmtPtr park = encode_park(s->expr, body, inv->expr, symbols, dir, s->span,
                                 next_id);
      // the encoding still contains the conditional sugar
      return desugar_rec(park, dir, symbols, next_id);
    }
    case StmtKind::Spec: {
      return encode_spec_statement(s->vars_list, symbols, s->expr, s->expr2, dir,
                                   s->span, next_id);
    }
    default:
      return s;
  }
}

}  // namespace

StmtPtr desugar(const StmtPtr& s, Direction dir,
                const std::map<std::string, Type>& symbols, int& next_id) {
  return desugar_rec(s, dir, symbols, next_id);
}

StmtPtr embed_spec(const ProcDecl& decl, int& next_id) {
  bool co = decl.direction == Direction::CoProc;
  Stmt pre;
  pre.kind = co ? StmtKind::CoAssume : StmtKind::Assume;
  pre.expr = decl.pre;
  pre.span = decl.pre->span;
  pre.origin = StmtOrigin::SpecEmbedPre;
  pre.id = next_id++;
  Stmt post;
  post.kind = co ? StmtKind::CoAssert : StmtKind::Assert;
  post.expr = decl.post;
  post.span = decl.post->span;
  post.origin = StmtOrigin::SpecEmbedPost;
  post.id = next_id++;
  return mk_block({mk_stmt(std::move(pre)), decl.body, mk_stmt(std::move(post))},
                  decl.span);
}

StmtPtr verification_body(const ProcDecl& decl, int& next_id) {
  if (next_id <= 0) next_id = max_stmt_id(decl.body) + 1;
  StmtPtr embedded = embed_spec(decl, next_id);
  return desugar(embedded, decl.direction, decl.symbols, next_id);
}

int max_stmt_id(const StmtPtr& s) {
  int m = 0;
  visit_stmts(s, [&](const Stmt& st) { m = std::max(m, st.id); });
  return m;
}

}  // namespace quiver
