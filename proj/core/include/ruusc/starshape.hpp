#pragma once

#include "ruusc/oracle.hpp"
#include "ruusc/region.hpp"

#include <vector>

namespace ruusc {

/// t_k = 1 - 2^-k for k = k_begin..k_end: geometric approach to 1.
std::vector<double> geometric_t_schedule(int k_begin = 1, int k_end = 20);

/// Outcome of sampling the strong star-shape condition
/// t * closure(D) + (1-t) * u0 subset D for t in [0,1[.
/// A pass means "no violation found" at the recorded sample counts and seed,
/// not a proof.
struct StarShapeReport {
  std::vector<double> t_schedule;
  int tested_points = 0;
  std::uint64_t seed = 0;

  struct Violation {
    double t;
    Vec u;        // closure sample
    Vec mapped;   // t*u + (1-t)*u0, not in D
  };
  std::vector<Violation> violations;

  bool pass = false;  // true iff violations is empty
};

/// Tests contains(t*u + (1-t)*u0) for every scheduled t and closure sample.
/// Closure samples must satisfy contains_closure; the set must be nonempty.
StarShapeReport check_strong_star_shape(const Region& d, const std::vector<double>& t_schedule,
                                        const SampleSet& closure_samples, int threads = 1);

/// chi_D: 0 on D, +inf outside. dom = D.
FunctionOracle indicator(const Region& d);

}  // namespace ruusc
