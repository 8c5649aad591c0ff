#include "quiver/pretty.hpp"

#include <sstream>

namespace quiver {

namespace {

// Precedence levels, matching the parser: implication lowest.
int prec(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Implies:
    case ExprKind::CoImplies: return 1;
    case ExprKind::Or: return 2;
    case ExprKind::And: return 3;
    case ExprKind::Cmp: return 4;
    case ExprKind::Add:
    case ExprKind::Sub: return 5;
    case ExprKind::Mul: return 6;
    case ExprKind::Not: return 7;
    default: return 8;
  }
}

void print_rec(std::ostream& os, const ExprPtr& e, int parent_prec);

void print_child(std::ostream& os, const ExprPtr& e, int my_prec, bool tighten) {
  print_rec(os, e, my_prec + (tighten ? 1 : 0));
}

void print_rec(std::ostream& os, const ExprPtr& e, int parent_prec) {
  int p = prec(*e);
  bool paren = p < parent_prec;
  if (paren) os << "(";
  switch (e->kind) {
    case ExprKind::BoolLit: os << (e->bval ? "true" : "false"); break;
    case ExprKind::RatLit: os << rat_to_string(e->rat); break;
    case ExprKind::InfLit: os << "infty"; break;
    case ExprKind::Var: os << e->var; break;
    case ExprKind::Not:
      os << "!";
      print_rec(os, e->args[0], 7);
      break;
    case ExprKind::And:
      print_child(os, e->args[0], 3, false);
      os << " && ";
      print_child(os, e->args[1], 3, true);
      break;
    case ExprKind::Or:
      print_child(os, e->args[0], 2, false);
      os << " || ";
      print_child(os, e->args[1], 2, true);
      break;
    case ExprKind::Cmp: {
      const char* op = "=";
      switch (e->cmp) {
        case CmpOp::Eq: op = "="; break;
        case CmpOp::Ne: op = "!="; break;
        case CmpOp::Le: op = "<="; break;
        case CmpOp::Lt: op = "<"; break;
        case CmpOp::Ge: op = ">="; break;
        case CmpOp::Gt: op = ">"; break;
      }
      print_child(os, e->args[0], 4, true);
      os << " " << op << " ";
      print_child(os, e->args[1], 4, true);
      break;
    }
    case ExprKind::Add:
      print_child(os, e->args[0], 5, false);
      os << " + ";
      print_child(os, e->args[1], 5, true);
      break;
    case ExprKind::Sub:
      print_child(os, e->args[0], 5, false);
      os << " - ";
      print_child(os, e->args[1], 5, true);
      break;
    case ExprKind::Mul:
      print_child(os, e->args[0], 6, false);
      os << " * ";
      print_child(os, e->args[1], 6, true);
      break;
    case ExprKind::Ite:
      os << "ite(";
      print_rec(os, e->args[0], 0);
      os << ", ";
      print_rec(os, e->args[1], 0);
      os << ", ";
      print_rec(os, e->args[2], 0);
      os << ")";
      break;
    case ExprKind::Embed:
      os << "embed(";
      print_rec(os, e->args[0], 0);
      os << ")";
      break;
    case ExprKind::Iverson:
      os << "[";
      print_rec(os, e->args[0], 0);
      os << "]";
      break;
    case ExprKind::Min:
    case ExprKind::Max:
      os << (e->kind == ExprKind::Min ? "min(" : "max(");
      print_rec(os, e->args[0], 0);
      os << ", ";
      print_rec(os, e->args[1], 0);
      os << ")";
      break;
    case ExprKind::Implies:
      print_child(os, e->args[0], 1, true);
      os << " ==> ";
      print_child(os, e->args[1], 1, false);
      break;
    case ExprKind::CoImplies:
      print_child(os, e->args[0], 1, true);
      os << " ~~> ";
      print_child(os, e->args[1], 1, false);
      break;
    case ExprKind::Validate:
      os << "validate(";
      print_rec(os, e->args[0], 0);
      os << ")";
      break;
    case ExprKind::CoValidate:
      os << "covalidate(";
      print_rec(os, e->args[0], 0);
      os << ")";
      break;
    case ExprKind::Inf:
    case ExprKind::Sup:
      os << (e->kind == ExprKind::Inf ? "inf " : "sup ") << e->var << ": "
         << type_name(e->bound_type) << ". ";
      print_rec(os, e->args[0], 1);
      break;
    case ExprKind::Subst:
      // No surface syntax; shown for debugging only.
      os << "subst(" << e->var << " := ";
      print_rec(os, e->args[1], 0);
      os << ", ";
      print_rec(os, e->args[0], 0);
      os << ")";
      break;
  }
  if (paren) os << ")";
}

std::string ind(int n) { return std::string(2 * n, ' '); }

void print_dist(std::ostream& os, const std::vector<DistBranch>& dist) {
  if (dist.size() == 1 && dist[0].prob == 1) {
    os << print_expr(dist[0].value);
    return;
  }
  os << "{ ";
  for (size_t i = 0; i < dist.size(); ++i) {
    if (i) os << ", ";
    os << rat_to_string(dist[i].prob) << ": " << print_expr(dist[i].value);
  }
  os << " }";
}

void print_stmt_rec(std::ostream& os, const StmtPtr& s, int n) {
  for (const auto& a : s->annotations) {
    os << ind(n) << "@" << a.name;
    if (a.expr) os << "(" << print_expr(a.expr) << ")";
    if (!a.text.empty()) os << "(\"" << a.text << "\")";
    os << "\n";
  }
  switch (s->kind) {
    case StmtKind::Block:
      for (const auto& c : s->stmts) print_stmt_rec(os, c, n);
      break;
    case StmtKind::VarDecl:
      os << ind(n) << "var " << s->var << ": " << type_name(s->var_type) << " = ";
      print_dist(os, s->dist);
      os << ";\n";
      break;
    case StmtKind::Assign:
      os << ind(n) << s->var << " = " << print_expr(s->expr) << ";\n";
      break;
    case StmtKind::RandAssign:
      os << ind(n) << s->var << " = ";
      print_dist(os, s->dist);
      os << ";\n";
      break;
    case StmtKind::Reward:
      os << ind(n) << "reward " << print_expr(s->expr) << ";\n";
      break;
    case StmtKind::Demonic:
    case StmtKind::Angelic:
      os << ind(n) << "if " << (s->kind == StmtKind::Demonic ? "demonic" : "angelic")
         << " {\n";
      print_stmt_rec(os, s->s1, n + 1);
      os << ind(n) << "} else {\n";
      print_stmt_rec(os, s->s2, n + 1);
      os << ind(n) << "}\n";
      break;
    case StmtKind::Assert:
      os << ind(n) << "assert " << print_expr(s->expr) << ";\n";
      break;
    case StmtKind::CoAssert:
      os << ind(n) << "coassert " << print_expr(s->expr) << ";\n";
      break;
    case StmtKind::Assume:
      os << ind(n) << "assume " << print_expr(s->expr) << ";\n";
      break;
    case StmtKind::CoAssume:
      os << ind(n) << "coassume " << print_expr(s->expr) << ";\n";
      break;
    case StmtKind::Havoc:
      os << ind(n) << "havoc " << s->var << ";\n";
      break;
    case StmtKind::CoHavoc:
      os << ind(n) << "cohavoc " << s->var << ";\n";
      break;
    case StmtKind::Validate:
      os << ind(n) << "validate;\n";
      break;
    case StmtKind::CoValidate:
      os << ind(n) << "covalidate;\n";
      break;
    case StmtKind::If:
      os << ind(n) << "if " << print_expr(s->expr) << " {\n";
      print_stmt_rec(os, s->s1, n + 1);
      os << ind(n) << "} else {\n";
      print_stmt_rec(os, s->s2, n + 1);
      os << ind(n) << "}\n";
      break;
    case StmtKind::While:
      os << ind(n) << "while " << print_expr(s->expr) << " {\n";
      print_stmt_rec(os, s->s1, n + 1);
      os << ind(n) << "}\n";
      break;
    case StmtKind::Spec: {
      os << ind(n) << "spec (";
      for (size_t i = 0; i < s->vars_list.size(); ++i) {
        if (i) os << ", ";
        os << s->vars_list[i];
      }
      os << ") pre " << print_expr(s->expr) << " post " << print_expr(s->expr2)
         << ";\n";
      break;
    }
  }
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(os, e, 0);
  return os.str();
}

std::string print_stmt(const StmtPtr& s, int indent) {
  std::ostringstream os;
  print_stmt_rec(os, s, indent);
  return os.str();
}

std::string print_proc(const ProcDecl& d) {
  std::ostringstream os;
  os << (d.direction == Direction::Proc ? "proc " : "coproc ") << d.name << "(";
  for (size_t i = 0; i < d.inputs.size(); ++i) {
    if (i) os << ", ";
    os << d.inputs[i].name << ": " << type_name(d.inputs[i].type);
  }
  os << ")";
  if (!d.outputs.empty()) {
    os << " -> (";
    for (size_t i = 0; i < d.outputs.size(); ++i) {
      if (i) os << ", ";
      os << d.outputs[i].name << ": " << type_name(d.outputs[i].type);
    }
    os << ")";
  }
  os << "\n  pre " << print_expr(d.pre) << "\n  post " << print_expr(d.post)
     << "\n{\n";
  os << print_stmt(d.body, 1);
  os << "}\n";
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (size_t i = 0; i < p.procs.size(); ++i) {
    if (i) os << "\n";
    os << print_proc(p.procs[i]);
  }
  return os.str();
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->cmp != b->cmp || a->var != b->var ||
      a->bound_type != b->bound_type || a->bval != b->bval || a->rat != b->rat)
    return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!expr_equal(a->args[i], b->args[i])) return false;
  return true;
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->var != b->var) return false;
  if (a->vars_list != b->vars_list) return false;
  if ((a->expr != nullptr) != (b->expr != nullptr)) return false;
  if (a->expr && !expr_equal(a->expr, b->expr)) return false;
  if ((a->expr2 != nullptr) != (b->expr2 != nullptr)) return false;
  if (a->expr2 && !expr_equal(a->expr2, b->expr2)) return false;
  if (a->dist.size() != b->dist.size()) return false;
  for (size_t i = 0; i < a->dist.size(); ++i) {
    if (a->dist[i].prob != b->dist[i].prob) return false;
    if (!expr_equal(a->dist[i].value, b->dist[i].value)) return false;
  }
  if (a->stmts.size() != b->stmts.size()) return false;
  for (size_t i = 0; i < a->stmts.size(); ++i)
    if (!stmt_equal(a->stmts[i], b->stmts[i])) return false;
  if (!stmt_equal(a->s1, b->s1) || !stmt_equal(a->s2, b->s2)) return false;
  if (a->annotations.size() != b->annotations.size()) return false;
  for (size_t i = 0; i < a->annotations.size(); ++i) {
    if (a->annotations[i].name != b->annotations[i].name) return false;
    if (a->annotations[i].text != b->annotations[i].text) return false;
    if ((a->annotations[i].expr != nullptr) != (b->annotations[i].expr != nullptr))
      return false;
    if (a->annotations[i].expr &&
        !expr_equal(a->annotations[i].expr, b->annotations[i].expr))
      return false;
  }
  return true;
}

}  // namespace quiver
