#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace qsolve {

using Rat = mpq_class;
using BigInt = mpz_class;

enum class Sort { Bool, Int, Real };

// Term kinds. Numeric terms are kept in a linear-combination normal form:
// every numeric value is a Lin node (sum of coefficient * atomic + constant)
// whose atomics are Var, NIte, NMul or ToReal nodes. Atoms carry the linear
// form inline and are normalized aggressively; ground facts fold to BoolConst
// at construction time.
enum class Op {
  BoolConst,
  Var,      // bool variable, or numeric atomic
  Lin,      // numeric value
  NIte,     // numeric ite(cond, a, b); kids = {cond, a, b}, a/b are Lin
  NMul,     // nonlinear product; kids = {a, b} Lin
  ToReal,   // kids = {int atomic}
  Le,       // lin <= 0
  Lt,       // lin < 0
  EqZ,      // lin = 0
  Divides,  // modulus | lin  (integers)
  Not,
  And,
  Or,
  Forall,  // bound vars in `bound`, kids = {body}
  Exists,
};

struct Term;
using TermRef = const Term*;

struct LinEntry {
  TermRef atomic;
  Rat coeff;
};

struct Term {
  Op op;
  Sort sort = Sort::Bool;
  bool bval = false;
  std::string name;          // Var
  std::vector<LinEntry> lin; // Lin and atoms
  Rat k;                     // Lin and atoms constant
  BigInt modulus;            // Divides
  std::vector<TermRef> bound;
  std::vector<TermRef> kids;
  std::uint64_t id = 0;
};

// Owns and interns terms; all construction goes through the factories, which
// canonicalize and constant-fold.
class TermTable {
 public:
  TermRef tt() { return bool_const(true); }
  TermRef ff() { return bool_const(false); }
  TermRef bool_const(bool b);
  TermRef var(const std::string& name, Sort s);

  // numeric construction (args and results are Lin or atomic-wrapped)
  TermRef constant(const Rat& r, Sort s);
  TermRef lin_of_atomic(TermRef atomic);
  TermRef add(TermRef a, TermRef b);
  TermRef neg(TermRef a);
  TermRef sub(TermRef a, TermRef b);
  TermRef scale(const Rat& c, TermRef a);
  TermRef mul(TermRef a, TermRef b);
  TermRef num_ite(TermRef c, TermRef a, TermRef b);
  TermRef to_real(TermRef a);

  // atoms: a <= b, a < b, a = b over numeric operands
  TermRef le(TermRef a, TermRef b);
  TermRef lt(TermRef a, TermRef b);
  TermRef eq(TermRef a, TermRef b);
  TermRef divides(const BigInt& d, TermRef lin);

  // formulas
  TermRef not_(TermRef a);
  TermRef and_(std::vector<TermRef> xs);
  TermRef or_(std::vector<TermRef> xs);
  TermRef and2(TermRef a, TermRef b) { return and_({a, b}); }
  TermRef or2(TermRef a, TermRef b) { return or_({a, b}); }
  TermRef implies(TermRef a, TermRef b) { return or2(not_(a), b); }
  TermRef iff(TermRef a, TermRef b);
  TermRef ite_formula(TermRef c, TermRef a, TermRef b);
  TermRef quant(Op op, std::vector<TermRef> bound, TermRef body);

  // Rebuilds an atom of the same kind from a transformed linear form.
  TermRef atom_from_lin(Op op, std::vector<LinEntry> lin, Rat k,
                        const BigInt& modulus = 0);

  // lin decomposed as coeff * atomic + rest for a given atomic
  static Rat coeff_of(TermRef lin_or_atom, TermRef atomic);

  bool is_true(TermRef t) const { return t->op == Op::BoolConst && t->bval; }
  bool is_false(TermRef t) const { return t->op == Op::BoolConst && !t->bval; }

  std::size_t size() const { return arena_.size(); }

  std::string to_string(TermRef t) const;

 private:
  TermRef intern(Term t);
  TermRef mk_lin(std::vector<LinEntry> lin, Rat k, Sort s);

  std::deque<Term> arena_;
  std::unordered_map<std::string, TermRef> index_;
  std::uint64_t next_id_ = 1;
};

// All variables occurring free in t (bool vars and numeric atomic vars).
void collect_vars(TermRef t, std::map<std::string, TermRef>& out);

bool contains_var(TermRef t, TermRef var);
bool contains_nonlinear(TermRef t);
bool contains_quantifier(TermRef t);

}  // namespace qsolve
