#pragma once

#include "ruusc/ext_real.hpp"
#include "ruusc/oracle.hpp"
#include "ruusc/region.hpp"
#include "ruusc/tabulated.hpp"

#include <optional>
#include <vector>

namespace ruusc {

struct EnvelopeParams {
  double r0 = 1.0;           // largest shell radius
  int levels = 16;           // radii r0 * 2^-k, k = 0..levels-1
  int samples_per_shell = 64;
  std::uint64_t seed = 7;
  int threads = 1;
};

/// Sup-inf estimate of the lower semicontinuous envelope at a point:
/// estimate = max over shrinking balls of the sampled infimum of f. Sampled
/// points pool across shells (a point counts for every ball containing it),
/// which keeps the per-radius infima monotone. Finite sampling over-estimates
/// each infimum, so the estimate is an upper bound that decreases under
/// refinement; it never exceeds f(u) because u itself is always sampled.
struct EnvelopeEstimate {
  Vec point;
  std::vector<double> radius_schedule;
  std::vector<ExtReal> shell_infima;  // nondecreasing as the radius shrinks
  ExtReal estimate = ExtReal::infinity();
  int samples_per_shell = 0;
  std::uint64_t seed = 0;

  /// Set when no admissible sample was found in the smallest ball although
  /// the point belongs to the closure: the sampling is too coarse to decide.
  bool inconclusive = false;
};

/// Envelope of f over all of R^n at u.
EnvelopeEstimate lsc_envelope(const FunctionOracle& f, const Vec& u, const EnvelopeParams& params = {});

/// Envelope of f + chi_D at u: ball samples are filtered by membership in D.
/// For u outside the closure of D the estimate is +inf.
EnvelopeEstimate lsc_envelope_in_region(const FunctionOracle& f, const Region& d, const Vec& u,
                                        const EnvelopeParams& params = {});

/// Per-point comparison of the envelope-in-D estimate with f itself; f is
/// lower semicontinuous in D when they agree on D.
struct LscReport {
  bool pass = false;
  int tested = 0;
  double tol = 0.0;

  struct Witness {
    Vec u;
    ExtReal f_value;
    ExtReal envelope;
  };
  std::vector<Witness> failures;
  int inconclusive_points = 0;
};

LscReport check_lsc_in_region(const FunctionOracle& f, const Region& d,
                              const SampleSet& interior_samples, double tol,
                              const EnvelopeParams& params = {});

/// Envelope of f tabulated on a uniform grid over the box (1-D or 2-D).
TabulatedFunction tabulate_envelope(const FunctionOracle& f, const Box& box, int res,
                                    const EnvelopeParams& params = {});

}  // namespace ruusc
