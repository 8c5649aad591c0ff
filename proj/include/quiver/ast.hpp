#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quiver/extreal.hpp"
#include "quiver/rational.hpp"

namespace quiver {

enum class Type { Bool, Int, UInt, UReal, EUReal };

std::string type_name(Type t);
std::optional<Type> type_from_name(const std::string& s);
bool is_numeric(Type t);
// Whether a value of `from` may appear where `to` is expected.
bool coercible(Type from, Type to);

struct Span {
  int line = 0;
  int col = 0;
  int len = 0;
  std::string to_string() const;
  bool operator==(const Span&) const = default;
  // Source order; used for deterministic candidate ordering.
  bool operator<(const Span& o) const {
    return line != o.line ? line < o.line : col < o.col;
  }
};

// ---------------------------------------------------------------------------
// Expressions. One node type covers program expressions and the expectation
// language; expectations are the numeric fragment extended with the lattice
// and quantifier operators.

enum class ExprKind {
  BoolLit,
  RatLit,   // non-negative rational literal (or integer)
  InfLit,   // infinity
  Var,
  Not,
  And,
  Or,
  Cmp,      // comparison of numeric operands, CmpOp payload
  Add,
  Sub,      // integers only
  Mul,
  Ite,      // cond, then, else
  Embed,    // embed(b): infinity/0
  Iverson,  // [b]: 1/0
  Min,
  Max,
  Implies,    // X ==> Y
  CoImplies,  // X ~~> Y
  Validate,
  CoValidate,
  Inf,    // inf x: tau. X
  Sup,    // sup x: tau. X
  Subst,  // lazy capture-avoiding substitution node: body[var/repl]
};

enum class CmpOp { Eq, Ne, Le, Lt, Ge, Gt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  Type type = Type::EUReal;
  // payloads
  bool bval = false;
  Rat rat;                // RatLit
  std::string var;        // Var; bound variable for Inf/Sup/Subst
  Type bound_type = Type::Bool;  // Inf/Sup
  CmpOp cmp = CmpOp::Eq;
  std::vector<ExprPtr> args;
  Span span;

  static ExprPtr mk_bool(bool b);
  static ExprPtr mk_rat(Rat r);
  static ExprPtr mk_int(long v) { return mk_rat(Rat(v)); }
  static ExprPtr mk_inf();
  static ExprPtr mk_var(std::string name, Type t);
  static ExprPtr mk_not(ExprPtr a);
  static ExprPtr mk_and(ExprPtr a, ExprPtr b);
  static ExprPtr mk_or(ExprPtr a, ExprPtr b);
  static ExprPtr mk_cmp(CmpOp op, ExprPtr a, ExprPtr b);
  static ExprPtr mk_add(ExprPtr a, ExprPtr b);
  static ExprPtr mk_sub(ExprPtr a, ExprPtr b);
  static ExprPtr mk_mul(ExprPtr a, ExprPtr b);
  static ExprPtr mk_ite(ExprPtr c, ExprPtr a, ExprPtr b);
  static ExprPtr mk_embed(ExprPtr b);
  static ExprPtr mk_iverson(ExprPtr b);
  static ExprPtr mk_min(ExprPtr a, ExprPtr b);
  static ExprPtr mk_max(ExprPtr a, ExprPtr b);
  static ExprPtr mk_implies(ExprPtr a, ExprPtr b);
  static ExprPtr mk_coimplies(ExprPtr a, ExprPtr b);
  static ExprPtr mk_validate(ExprPtr a);
  static ExprPtr mk_covalidate(ExprPtr a);
  static ExprPtr mk_inf_quant(std::string x, Type t, ExprPtr body);
  static ExprPtr mk_sup_quant(std::string x, Type t, ExprPtr body);
  static ExprPtr mk_subst(ExprPtr body, std::string x, ExprPtr repl);
};

// Free variables (excluding bound occurrences); substitution targets applied.
void free_vars(const ExprPtr& e, std::map<std::string, Type>& out);

// ---------------------------------------------------------------------------
// Statements.

enum class StmtKind {
  Block,
  VarDecl,     // var x: tau = expr | dist
  Assign,      // x = expr
  RandAssign,  // x = dist
  Reward,
  Demonic,  // if demonic {..} else {..}
  Angelic,
  Assert,
  CoAssert,
  Assume,
  CoAssume,
  Havoc,
  CoHavoc,
  Validate,
  CoValidate,
  If,     // sugar
  While,  // sugar, needs @invariant
  Spec,   // sugar: spec (v...) pre X post Y;  placeholder statement
};

// Where a statement came from; selection and diagnostics key off this.
enum class StmtOrigin {
  User,
  SpecEmbedPre,   // assume/coassume of the proc pre
  SpecEmbedPost,  // assert/coassert of the proc post
  DesugarGuard,   // assume/coassume generated for an if-sugar branch
  ProofRule,      // generated by a proof-rule encoding; see role
};

// Role tags for proof-rule generated statements (structural, not textual).
enum class StmtRole {
  None,
  ParkAssert1,   // assert I before the havoc
  ParkAssert2,   // assert I after the body
  ParkAssumeI,   // assume I after validate
  ParkAssumeII,  // assume embed(false) ending the body
  ParkHavoc,
  ParkValidate,
  SpecPre,    // assert X of a specification statement
  SpecHavoc,
  SpecValidate,
  SpecPost,   // assume Y of a specification statement
};

struct Annotation {
  std::string name;  // invariant, slice_verify, error_msg, success_msg
  ExprPtr expr;      // @invariant
  std::string text;  // @error_msg / @success_msg
  Span span;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct DistBranch {
  Rat prob;
  ExprPtr value;
};

struct Stmt {
  StmtKind kind;
  int id = 0;  // unique within a proc after elaboration
  std::string var;
  Type var_type = Type::Bool;          // VarDecl
  ExprPtr expr;                        // Assign rhs, Reward amount, Assert/Assume/... expectation, If/While cond, Spec pre
  ExprPtr expr2;                       // Spec post
  std::vector<std::string> vars_list;  // Spec modified variables
  std::vector<DistBranch> dist;        // RandAssign / VarDecl initializer
  std::vector<StmtPtr> stmts;          // Block
  StmtPtr s1, s2;                      // Demonic/Angelic/If branches, While body
  std::vector<Annotation> annotations;
  Span span;
  StmtOrigin origin = StmtOrigin::User;
  StmtRole role = StmtRole::None;

  bool has_annotation(const std::string& name) const;
  const Annotation* find_annotation(const std::string& name) const;
};

StmtPtr mk_stmt(Stmt s);
StmtPtr mk_block(std::vector<StmtPtr> stmts, Span span = {});

enum class Direction { Proc, CoProc };

struct Param {
  std::string name;
  Type type;
  Span span;
};

struct ProcDecl {
  std::string name;
  Direction direction = Direction::Proc;
  std::vector<Param> inputs;
  std::vector<Param> outputs;
  ExprPtr pre;
  ExprPtr post;
  StmtPtr body;
  Span span;
  std::string file;
  // All declared variables (params + locals) with their types.
  std::map<std::string, Type> symbols;
};

struct Program {
  std::vector<ProcDecl> procs;
};

// ---------------------------------------------------------------------------
// Errors.

struct SourceError : std::runtime_error {
  Span span;
  SourceError(std::string msg, Span s)
      : std::runtime_error(std::move(msg)), span(s) {}
};
struct SyntaxError : SourceError {
  using SourceError::SourceError;
};
struct TypeError : SourceError {
  using SourceError::SourceError;
};
struct DistributionNotNormalized : SourceError {
  using SourceError::SourceError;
};
struct MissingInvariant : SourceError {
  using SourceError::SourceError;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundVariable : EvalError {
  using EvalError::EvalError;
};
struct NonEnumerableDomain : EvalError {
  using EvalError::EvalError;
};

// Walks every statement in evaluation order (blocks flattened, both branches).
void visit_stmts(const StmtPtr& s, const std::function<void(const Stmt&)>& f);

}  // namespace quiver
