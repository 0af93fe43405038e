#pragma once

#include "ruusc/types.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ruusc {

/// Extended real value in ]-inf, +inf]. +inf is an explicit tag, never a
/// floating-point infinity produced by overflow: constructing a finite value
/// from a non-finite double is a hard error, so verifiers can distinguish
/// "constraint violated" from "numerical blow-up".
class ExtReal {
 public:
  ExtReal() : value_(0.0), finite_(true) {}

  static ExtReal finite(double x) {
    if (!std::isfinite(x)) throw Error("ExtReal: non-finite value where a finite real was required");
    ExtReal r;
    r.value_ = x;
    r.finite_ = true;
    return r;
  }

  static ExtReal infinity() {
    ExtReal r;
    r.value_ = std::numeric_limits<double>::infinity();
    r.finite_ = false;
    return r;
  }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }

  /// Finite value; hard error when +inf.
  double value() const {
    if (!finite_) throw Error("ExtReal: value() on +inf");
    return value_;
  }

  /// Finite value, or +inf as a double (for printing and comparisons).
  double as_double() const { return finite_ ? value_ : std::numeric_limits<double>::infinity(); }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return finite(a.value_ + b.value_);
  }

  friend ExtReal operator+(const ExtReal& a, double b) { return a + finite(b); }

  /// a - b with b required finite; inf - inf is a hard error by construction.
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) {
    if (!b.finite_) throw Error("ExtReal: subtraction of +inf");
    if (!a.finite_) return infinity();
    return finite(a.value_ - b.value_);
  }

  /// Scaling by a nonnegative real; lambda * inf = inf for lambda > 0,
  /// 0 * inf is a hard error (indeterminate).
  friend ExtReal operator*(double lambda, const ExtReal& a) {
    if (lambda < 0.0) throw Error("ExtReal: scaling by a negative real");
    if (!a.finite_) {
      if (lambda == 0.0) throw Error("ExtReal: 0 * inf");
      return infinity();
    }
    return finite(lambda * a.value_);
  }

  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    return a.as_double() < b.as_double();
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) {
    return a.as_double() <= b.as_double();
  }
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  std::string str() const { return finite_ ? std::to_string(value_) : "inf"; }

 private:
  double value_;
  bool finite_;
};

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return a <= b ? a : b; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a <= b ? b : a; }

/// |a - b| with the convention inf == inf -> 0; one-sided inf -> +inf.
inline ExtReal gap(const ExtReal& a, const ExtReal& b) {
  if (a.is_infinite() && b.is_infinite()) return ExtReal::finite(0.0);
  if (a.is_infinite() || b.is_infinite()) return ExtReal::infinity();
  return ExtReal::finite(std::abs(a.value() - b.value()));
}

}  // namespace ruusc
