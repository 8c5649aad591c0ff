#pragma once

#include <stdexcept>
#include <string>

#include "quiver/rational.hpp"

namespace quiver {

// A value in the extended unsigned reals R>=0 with infinity. Arithmetic is
// total; the convention 0 * inf = 0 applies. Subtraction and division are
// deliberately absent.
class ExtReal {
 public:
  ExtReal() : inf_(false), q_(0) {}
  explicit ExtReal(Rat q) : inf_(false), q_(std::move(q)) {
    q_.canonicalize();
    if (q_ < 0) throw std::invalid_argument("ExtReal: negative value");
  }
  static ExtReal infinity() {
    ExtReal e;
    e.inf_ = true;
    return e;
  }
  static ExtReal zero() { return ExtReal(); }
  static ExtReal one() { return ExtReal(Rat(1)); }

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && q_ == 0; }
  // Only meaningful when finite.
  const Rat& value() const {
    if (inf_) throw std::logic_error("ExtReal: value() on infinity");
    return q_;
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.q_ == b.q_;
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) {
    if (b.inf_) return true;
    if (a.inf_) return false;
    return a.q_ <= b.q_;
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    return a <= b && a != b;
  }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return b <= a; }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal(a.q_ + b.q_);
  }
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    // 0 * inf = 0
    if (a.is_zero() || b.is_zero()) return zero();
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal(a.q_ * b.q_);
  }

  friend ExtReal emin(const ExtReal& a, const ExtReal& b) { return a <= b ? a : b; }
  friend ExtReal emax(const ExtReal& a, const ExtReal& b) { return a <= b ? b : a; }

  // X -> Y: infinity when X <= Y, otherwise Y.
  friend ExtReal eimplies(const ExtReal& x, const ExtReal& y) {
    return x <= y ? infinity() : y;
  }
  // X ~~> Y: 0 when X >= Y, otherwise Y.
  friend ExtReal ecoimplies(const ExtReal& x, const ExtReal& y) {
    return x >= y ? zero() : y;
  }

  ExtReal validate() const { return inf_ ? infinity() : zero(); }
  ExtReal covalidate() const { return is_zero() ? zero() : infinity(); }

  std::string to_string() const {
    return inf_ ? "infty" : rat_to_string(q_);
  }

 private:
  bool inf_;
  Rat q_;
};

}  // namespace quiver
