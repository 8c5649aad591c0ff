#include "qsolve/term.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qsolve {

namespace {

BigInt lcm_den(const std::vector<LinEntry>& lin, const Rat& k) {
  BigInt l = k.get_den();
  for (const auto& e : lin) {
    BigInt d = e.coeff.get_den();
    BigInt g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  return l;
}

BigInt gcd_coeffs(const std::vector<LinEntry>& lin) {
  BigInt g = 0;
  for (const auto& e : lin) {
    BigInt n = abs(e.coeff.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  return g;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt mod_pos(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool rat_is_int(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_den() == 1;
}

}  // namespace

TermRef TermTable::intern(Term t) {
  std::ostringstream key;
  key << static_cast<int>(t.op) << '|' << static_cast<int>(t.sort) << '|'
      << t.bval << '|' << t.name << '|' << t.modulus.get_str() << '|'
      << t.k.get_num().get_str() << '/' << t.k.get_den().get_str();
  for (const auto& e : t.lin)
    key << ";a" << e.atomic->id << '*' << e.coeff.get_num().get_str() << '/'
        << e.coeff.get_den().get_str();
  for (const auto& b : t.bound) key << ";b" << b->id;
  for (const auto& c : t.kids) key << ";k" << c->id;
  auto it = index_.find(key.str());
  if (it != index_.end()) return it->second;
  t.id = next_id_++;
  arena_.push_back(std::move(t));
  TermRef r = &arena_.back();
  index_.emplace(key.str(), r);
  return r;
}

TermRef TermTable::bool_const(bool b) {
  Term t;
  t.op = Op::BoolConst;
  t.sort = Sort::Bool;
  t.bval = b;
  return intern(std::move(t));
}

TermRef TermTable::var(const std::string& name, Sort s) {
  Term t;
  t.op = Op::Var;
  t.sort = s;
  t.name = name;
  return intern(std::move(t));
}

TermRef TermTable::mk_lin(std::vector<LinEntry> lin, Rat k, Sort s) {
  std::sort(lin.begin(), lin.end(), [](const LinEntry& a, const LinEntry& b) {
    return a.atomic->id < b.atomic->id;
  });
  std::vector<LinEntry> merged;
  for (auto& e : lin) {
    if (!merged.empty() && merged.back().atomic == e.atomic)
      merged.back().coeff += e.coeff;
    else
      merged.push_back(e);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const LinEntry& e) { return e.coeff == 0; }),
               merged.end());
  Term t;
  t.op = Op::Lin;
  t.sort = s;
  t.lin = std::move(merged);
  t.k = std::move(k);
  t.k.canonicalize();
  for (auto& e : t.lin) e.coeff.canonicalize();
  return intern(std::move(t));
}

TermRef TermTable::constant(const Rat& r, Sort s) { return mk_lin({}, r, s); }

TermRef TermTable::lin_of_atomic(TermRef atomic) {
  if (atomic->op == Op::Lin) return atomic;
  return mk_lin({{atomic, Rat(1)}}, Rat(0), atomic->sort);
}

TermRef TermTable::add(TermRef a, TermRef b) {
  a = lin_of_atomic(a);
  b = lin_of_atomic(b);
  if (a->sort != b->sort)
    throw std::runtime_error("add: sort mismatch");
  std::vector<LinEntry> lin = a->lin;
  lin.insert(lin.end(), b->lin.begin(), b->lin.end());
  return mk_lin(std::move(lin), a->k + b->k, a->sort);
}

TermRef TermTable::neg(TermRef a) { return scale(Rat(-1), a); }

TermRef TermTable::sub(TermRef a, TermRef b) { return add(a, neg(b)); }

TermRef TermTable::scale(const Rat& c, TermRef a) {
  a = lin_of_atomic(a);
  if (a->sort == Sort::Int && c.get_den() != 1)
    throw std::runtime_error("scale: non-integer coefficient on Int");
  std::vector<LinEntry> lin = a->lin;
  for (auto& e : lin) e.coeff *= c;
  return mk_lin(std::move(lin), a->k * c, a->sort);
}

TermRef TermTable::mul(TermRef a, TermRef b) {
  a = lin_of_atomic(a);
  b = lin_of_atomic(b);
  if (a->lin.empty()) return scale(a->k, b);
  if (b->lin.empty()) return scale(b->k, a);
  Term t;
  t.op = Op::NMul;
  t.sort = (a->sort == Sort::Real || b->sort == Sort::Real) ? Sort::Real : Sort::Int;
  t.kids = {a, b};
  return lin_of_atomic(intern(std::move(t)));
}

TermRef TermTable::num_ite(TermRef c, TermRef a, TermRef b) {
  a = lin_of_atomic(a);
  b = lin_of_atomic(b);
  if (is_true(c)) return a;
  if (is_false(c)) return b;
  if (a == b) return a;
  Sort s = (a->sort == Sort::Real || b->sort == Sort::Real) ? Sort::Real : Sort::Int;
  if (s == Sort::Real) {
    a = to_real(a);
    b = to_real(b);
  }
  Term t;
  t.op = Op::NIte;
  t.sort = s;
  t.kids = {c, a, b};
  return lin_of_atomic(intern(std::move(t)));
}

TermRef TermTable::to_real(TermRef a) {
  a = lin_of_atomic(a);
  if (a->sort == Sort::Real) return a;
  std::vector<LinEntry> lin;
  for (const auto& e : a->lin) {
    TermRef atom = e.atomic;
    if (atom->sort == Sort::Int) {
      Term t;
      t.op = Op::ToReal;
      t.sort = Sort::Real;
      t.kids = {atom};
      atom = intern(std::move(t));
    }
    lin.push_back({atom, e.coeff});
  }
  return mk_lin(std::move(lin), a->k, Sort::Real);
}

TermRef TermTable::atom_from_lin(Op op, std::vector<LinEntry> lin, Rat k,
                                 const BigInt& modulus) {
  // determine sort: int when every atomic is int-sorted
  bool all_int = true;
  for (const auto& e : lin)
    if (e.atomic->sort != Sort::Int) all_int = false;

  // pure to_real atoms over integer atomics scale back to integer atoms
  if (!all_int && op != Op::Divides) {
    bool all_cast_int = true;
    for (const auto& e : lin)
      if (!(e.atomic->op == Op::ToReal && e.atomic->kids[0]->sort == Sort::Int))
        all_cast_int = false;
    if (all_cast_int && !lin.empty()) {
      std::vector<LinEntry> unwrapped;
      for (const auto& e : lin) unwrapped.push_back({e.atomic->kids[0], e.coeff});
      lin = std::move(unwrapped);
      all_int = true;
    }
  }

  if (lin.empty()) {
    switch (op) {
      case Op::Le: return bool_const(k <= 0);
      case Op::Lt: return bool_const(k < 0);
      case Op::EqZ: return bool_const(k == 0);
      case Op::Divides: {
        if (!rat_is_int(k)) return bool_const(false);
        BigInt d = modulus < 0 ? BigInt(-modulus) : modulus;
        return bool_const(mod_pos(k.get_num(), d) == 0);
      }
      default: throw std::runtime_error("atom_from_lin: bad op");
    }
  }

  if (all_int) {
    // scale to integer coefficients
    BigInt l = lcm_den(lin, k);
    if (l != 1) {
      for (auto& e : lin) e.coeff *= Rat(l);
      k *= Rat(l);
    }
    if (op == Op::Lt) {
      // c.x + k < 0 over Z is c.x + k + 1 <= 0
      op = Op::Le;
      k += 1;
    }
    if (op == Op::Divides) {
      BigInt d = modulus;
      if (d < 0) d = -d;
      if (d == 1) return bool_const(true);
      std::vector<LinEntry> red;
      for (auto& e : lin) {
        Rat c(mod_pos(e.coeff.get_num(), d));
        if (c != 0) red.push_back({e.atomic, c});
      }
      Rat kk(mod_pos(k.get_num(), d));
      if (red.empty()) return bool_const(kk == 0);
      Term t;
      t.op = Op::Divides;
      t.sort = Sort::Bool;
      t.lin = std::move(red);
      t.k = kk;
      t.modulus = d;
      std::sort(t.lin.begin(), t.lin.end(),
                [](const LinEntry& a, const LinEntry& b) {
                  return a.atomic->id < b.atomic->id;
                });
      return intern(std::move(t));
    }
    BigInt g = gcd_coeffs(lin);
    if (g > 1) {
      for (auto& e : lin) e.coeff /= Rat(g);
      if (op == Op::Le) {
        // sum <= -k  ==>  sum <= floor(-k/g)
        k = Rat(-floor_div(-k.get_num(), g));
      } else {  // EqZ
        if (mod_pos(k.get_num(), g) != 0) return bool_const(false);
        k /= Rat(g);
      }
    }
  } else {
    if (op == Op::Divides)
      throw std::runtime_error("divisibility over reals");
    // normalize leading coefficient to +-1
    Rat c0 = lin.front().coeff;
    Rat scale = c0 > 0 ? c0 : -c0;
    if (scale != 1) {
      for (auto& e : lin) e.coeff /= scale;
      k /= scale;
    }
  }

  if (op == Op::EqZ && lin.front().coeff < 0) {
    for (auto& e : lin) e.coeff = -e.coeff;
    k = -k;
  }

  Term t;
  t.op = op;
  t.sort = Sort::Bool;
  t.lin = std::move(lin);
  t.k = std::move(k);
  std::sort(t.lin.begin(), t.lin.end(), [](const LinEntry& a, const LinEntry& b) {
    return a.atomic->id < b.atomic->id;
  });
  for (auto& e : t.lin) e.coeff.canonicalize();
  t.k.canonicalize();
  return intern(std::move(t));
}

bool rat_is_int(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_den() == 1;
}

TermRef TermTable::le(TermRef a, TermRef b) {
  TermRef d = sub(a, b);
  return atom_from_lin(Op::Le, d->lin, d->k);
}

TermRef TermTable::lt(TermRef a, TermRef b) {
  TermRef d = sub(a, b);
  return atom_from_lin(Op::Lt, d->lin, d->k);
}

TermRef TermTable::eq(TermRef a, TermRef b) {
  TermRef d = sub(a, b);
  return atom_from_lin(Op::EqZ, d->lin, d->k);
}

TermRef TermTable::divides(const BigInt& d, TermRef lin) {
  lin = lin_of_atomic(lin);
  return atom_from_lin(Op::Divides, lin->lin, lin->k, d);
}

TermRef TermTable::not_(TermRef a) {
  switch (a->op) {
    case Op::BoolConst: return bool_const(!a->bval);
    case Op::Not: return a->kids[0];
    case Op::Le: {
      std::vector<LinEntry> lin = a->lin;
      for (auto& e : lin) e.coeff = -e.coeff;
      return atom_from_lin(Op::Lt, std::move(lin), -a->k);
    }
    case Op::Lt: {
      std::vector<LinEntry> lin = a->lin;
      for (auto& e : lin) e.coeff = -e.coeff;
      return atom_from_lin(Op::Le, std::move(lin), -a->k);
    }
    case Op::EqZ: {
      TermRef less = atom_from_lin(Op::Lt, a->lin, a->k);
      std::vector<LinEntry> lin = a->lin;
      for (auto& e : lin) e.coeff = -e.coeff;
      TermRef greater = atom_from_lin(Op::Lt, std::move(lin), -a->k);
      return or2(less, greater);
    }
    case Op::And: {
      std::vector<TermRef> kids;
      kids.reserve(a->kids.size());
      for (TermRef c : a->kids) kids.push_back(not_(c));
      return or_(std::move(kids));
    }
    case Op::Or: {
      std::vector<TermRef> kids;
      kids.reserve(a->kids.size());
      for (TermRef c : a->kids) kids.push_back(not_(c));
      return and_(std::move(kids));
    }
    case Op::Forall: {
      Term t;
      t.op = Op::Exists;
      t.sort = Sort::Bool;
      t.bound = a->bound;
      t.kids = {not_(a->kids[0])};
      return intern(std::move(t));
    }
    case Op::Exists: {
      Term t;
      t.op = Op::Forall;
      t.sort = Sort::Bool;
      t.bound = a->bound;
      t.kids = {not_(a->kids[0])};
      return intern(std::move(t));
    }
    default: {
      Term t;
      t.op = Op::Not;
      t.sort = Sort::Bool;
      t.kids = {a};
      return intern(std::move(t));
    }
  }
}

TermRef TermTable::and_(std::vector<TermRef> xs) {
  std::vector<TermRef> flat;
  for (TermRef x : xs) {
    if (is_false(x)) return ff();
    if (is_true(x)) continue;
    if (x->op == Op::And)
      flat.insert(flat.end(), x->kids.begin(), x->kids.end());
    else
      flat.push_back(x);
  }
  std::sort(flat.begin(), flat.end(),
            [](TermRef a, TermRef b) { return a->id < b->id; });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  std::set<std::uint64_t> ids;
  for (TermRef x : flat) ids.insert(x->id);
  for (TermRef x : flat) {
    TermRef n = not_(x);
    if (ids.count(n->id)) return ff();
  }
  if (flat.empty()) return tt();
  if (flat.size() == 1) return flat[0];
  Term t;
  t.op = Op::And;
  t.sort = Sort::Bool;
  t.kids = std::move(flat);
  return intern(std::move(t));
}

TermRef TermTable::or_(std::vector<TermRef> xs) {
  std::vector<TermRef> flat;
  for (TermRef x : xs) {
    if (is_true(x)) return tt();
    if (is_false(x)) continue;
    if (x->op == Op::Or)
      flat.insert(flat.end(), x->kids.begin(), x->kids.end());
    else
      flat.push_back(x);
  }
  std::sort(flat.begin(), flat.end(),
            [](TermRef a, TermRef b) { return a->id < b->id; });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  std::set<std::uint64_t> ids;
  for (TermRef x : flat) ids.insert(x->id);
  for (TermRef x : flat) {
    TermRef n = not_(x);
    if (ids.count(n->id)) return tt();
  }
  if (flat.empty()) return ff();
  if (flat.size() == 1) return flat[0];
  Term t;
  t.op = Op::Or;
  t.sort = Sort::Bool;
  t.kids = std::move(flat);
  return intern(std::move(t));
}

TermRef TermTable::iff(TermRef a, TermRef b) {
  return or2(and2(a, b), and2(not_(a), not_(b)));
}

TermRef TermTable::ite_formula(TermRef c, TermRef a, TermRef b) {
  return or2(and2(c, a), and2(not_(c), b));
}

TermRef TermTable::quant(Op op, std::vector<TermRef> bound, TermRef body) {
  if (body->op == Op::BoolConst || bound.empty()) return body;
  Term t;
  t.op = op;
  t.sort = Sort::Bool;
  t.bound = std::move(bound);
  t.kids = {body};
  return intern(std::move(t));
}

Rat TermTable::coeff_of(TermRef lin, TermRef atomic) {
  for (const auto& e : lin->lin)
    if (e.atomic == atomic) return e.coeff;
  return Rat(0);
}

std::string TermTable::to_string(TermRef t) const {
  std::ostringstream os;
  switch (t->op) {
    case Op::BoolConst: os << (t->bval ? "true" : "false"); break;
    case Op::Var: os << t->name; break;
    case Op::Lin: {
      os << "(lin";
      for (const auto& e : t->lin)
        os << " " << e.coeff.get_str() << "*" << to_string(e.atomic);
      os << " + " << t->k.get_str() << ")";
      break;
    }
    case Op::NIte:
      os << "(ite " << to_string(t->kids[0]) << " " << to_string(t->kids[1])
         << " " << to_string(t->kids[2]) << ")";
      break;
    case Op::NMul:
      os << "(* " << to_string(t->kids[0]) << " " << to_string(t->kids[1]) << ")";
      break;
    case Op::ToReal: os << "(to_real " << to_string(t->kids[0]) << ")"; break;
    case Op::Le:
    case Op::Lt:
    case Op::EqZ: {
      os << "(" << (t->op == Op::Le ? "<=" : t->op == Op::Lt ? "<" : "=") << " (";
      for (const auto& e : t->lin)
        os << " " << e.coeff.get_str() << "*" << to_string(e.atomic);
      os << " + " << t->k.get_str() << ") 0)";
      break;
    }
    case Op::Divides: {
      os << "(divides " << t->modulus.get_str() << " (";
      for (const auto& e : t->lin)
        os << " " << e.coeff.get_str() << "*" << to_string(e.atomic);
      os << " + " << t->k.get_str() << "))";
      break;
    }
    case Op::Not: os << "(not " << to_string(t->kids[0]) << ")"; break;
    case Op::And:
    case Op::Or: {
      os << (t->op == Op::And ? "(and" : "(or");
      for (TermRef c : t->kids) os << " " << to_string(c);
      os << ")";
      break;
    }
    case Op::Forall:
    case Op::Exists: {
      os << (t->op == Op::Forall ? "(forall (" : "(exists (");
      for (TermRef b : t->bound) os << b->name << " ";
      os << ") " << to_string(t->kids[0]) << ")";
      break;
    }
  }
  return os.str();
}

namespace {
void collect_vars_rec(TermRef t, std::map<std::string, TermRef>& out,
                      std::set<std::string>& bound) {
  switch (t->op) {
    case Op::Var:
      if (!bound.count(t->name)) out.emplace(t->name, t);
      return;
    case Op::Lin:
    case Op::Le:
    case Op::Lt:
    case Op::EqZ:
    case Op::Divides:
      for (const auto& e : t->lin) collect_vars_rec(e.atomic, out, bound);
      return;
    case Op::Forall:
    case Op::Exists: {
      std::vector<std::string> added;
      for (TermRef b : t->bound)
        if (bound.insert(b->name).second) added.push_back(b->name);
      collect_vars_rec(t->kids[0], out, bound);
      for (const auto& n : added) bound.erase(n);
      return;
    }
    default:
      for (TermRef c : t->kids) collect_vars_rec(c, out, bound);
      return;
  }
}
}  // namespace

void collect_vars(TermRef t, std::map<std::string, TermRef>& out) {
  std::set<std::string> bound;
  collect_vars_rec(t, out, bound);
}

bool contains_var(TermRef t, TermRef var) {
  if (t == var) return true;
  switch (t->op) {
    case Op::Var: return false;
    case Op::Lin:
    case Op::Le:
    case Op::Lt:
    case Op::EqZ:
    case Op::Divides:
      for (const auto& e : t->lin)
        if (contains_var(e.atomic, var)) return true;
      return false;
    default:
      for (TermRef c : t->kids)
        if (contains_var(c, var)) return true;
      return false;
  }
}

bool contains_nonlinear(TermRef t) {
  switch (t->op) {
    case Op::NMul: return true;
    case Op::Var:
    case Op::BoolConst: return false;
    case Op::Lin:
    case Op::Le:
    case Op::Lt:
    case Op::EqZ:
    case Op::Divides:
      for (const auto& e : t->lin)
        if (contains_nonlinear(e.atomic)) return true;
      return false;
    default:
      for (TermRef c : t->kids)
        if (contains_nonlinear(c)) return true;
      return false;
  }
}

bool contains_quantifier(TermRef t) {
  switch (t->op) {
    case Op::Forall:
    case Op::Exists: return true;
    case Op::Lin:
    case Op::Le:
    case Op::Lt:
    case Op::EqZ:
    case Op::Divides:
      for (const auto& e : t->lin)
        if (contains_quantifier(e.atomic)) return true;
      return false;
    default:
      for (TermRef c : t->kids)
        if (contains_quantifier(c)) return true;
      return false;
  }
}

}  // namespace qsolve
