#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace ruusc {

using Vec = Eigen::VectorXd;

/// Generic hard error raised by the toolkit.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A stated hypothesis of a verified statement is violated or cannot be
/// established from the given inputs. Verifiers refuse to run instead of
/// producing a misleading pass/fail verdict. Maps to CLI exit code 2.
struct HypothesisRefused : Error {
  using Error::Error;
};

/// Malformed input: unknown catalog name, bad dimension, invalid problem
/// description. Maps to CLI exit code 3.
struct SpecError : Error {
  using Error::Error;
};

/// Axis-aligned box [lo, hi] in R^n.
struct Box {
  Vec lo;
  Vec hi;

  int dim() const { return static_cast<int>(lo.size()); }

  bool valid() const {
    if (lo.size() != hi.size() || lo.size() == 0) return false;
    for (int i = 0; i < lo.size(); ++i)
      if (!(lo[i] <= hi[i])) return false;
    return true;
  }

  bool contains(const Vec& x, double pad = 0.0) const {
    for (int i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] - pad || x[i] > hi[i] + pad) return false;
    return true;
  }

  double extent() const {
    double e = 0.0;
    for (int i = 0; i < lo.size(); ++i) e = std::max(e, hi[i] - lo[i]);
    return e;
  }
};

inline Box make_box(std::initializer_list<double> lo, std::initializer_list<double> hi) {
  Box b;
  b.lo = Vec(static_cast<Eigen::Index>(lo.size()));
  b.hi = Vec(static_cast<Eigen::Index>(hi.size()));
  int i = 0;
  for (double v : lo) b.lo[i++] = v;
  i = 0;
  for (double v : hi) b.hi[i++] = v;
  if (!b.valid()) throw SpecError("make_box: empty or mismatched box");
  return b;
}

inline Vec vec1(double x) {
  Vec v(1);
  v << x;
  return v;
}

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

/// Point t*u + (1-t)*u0 on the segment from u0 to u.
inline Vec radial_point(const Vec& u0, const Vec& u, double t) {
  return t * u + (1.0 - t) * u0;
}

}  // namespace ruusc
