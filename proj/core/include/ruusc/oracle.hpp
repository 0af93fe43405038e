#pragma once

#include "ruusc/ext_real.hpp"
#include "ruusc/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace ruusc {

/// Pure evaluation map R^n -> ]-inf, +inf]. Oracles are immutable after
/// construction and safe to evaluate concurrently.
struct FunctionOracle {
  /// Declared analytic properties. Declarations are ground truth for
  /// verifiers (then spot-checked); they are never inferred.
  struct Traits {
    bool convex = false;
    bool continuous = false;
    std::optional<double> lower_bound;        // inf over the whole domain, if known
    std::optional<double> sup_abs_on_dom;     // sup |f| over dom f, if known
    std::optional<bool> ru_usc;               // declared radial property, if known
  };

  int dim = 0;
  std::function<ExtReal(const Vec&)> eval_fn;
  std::function<bool(const Vec&)> dom_fn;  // defaults to finiteness of eval
  Traits traits;
  std::string name;

  ExtReal eval(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim)
      throw SpecError("FunctionOracle '" + name + "': dimension mismatch");
    return eval_fn(x);
  }

  bool dom_contains(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim)
      throw SpecError("FunctionOracle '" + name + "': dimension mismatch");
    if (dom_fn) return dom_fn(x);
    return eval_fn(x).is_finite();
  }
};

inline FunctionOracle make_oracle(std::string name, int dim,
                                  std::function<ExtReal(const Vec&)> fn,
                                  FunctionOracle::Traits traits = {}) {
  FunctionOracle f;
  f.name = std::move(name);
  f.dim = dim;
  f.eval_fn = std::move(fn);
  f.traits = traits;
  return f;
}

}  // namespace ruusc
