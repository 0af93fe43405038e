#pragma once

#include "ruusc/ext_real.hpp"
#include "ruusc/oracle.hpp"
#include "ruusc/region.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ruusc {

/// Sampled radial uniform modulus of f on D relative to u0:
/// for each scheduled t, the maximum over sampled u in D of
///   (f(t u + (1-t) u0) - f(u)) / (a + |f(u)|),
/// optionally sharpened by a local coordinate search around the argmax.
/// Being a finite max, each entry is a lower bound of the true supremum.
struct ModulusProfile {
  double a = 1.0;
  std::vector<double> t_schedule;
  std::vector<ExtReal> delta_estimates;   // per t
  std::vector<Vec> argmax_points;         // per t
  int sample_count = 0;
  std::uint64_t seed = 0;

  /// (t, u) pairs where the mapped point left dom f: the segment geometry is
  /// broken there, so the estimate at that t is +inf.
  struct GeometryViolation {
    double t;
    Vec u;
  };
  std::vector<GeometryViolation> violations;

  /// Max of delta_estimates over the last `tail` entries.
  ExtReal tail_limsup(int tail) const;
};

struct ModulusParams {
  bool refine = true;   // coordinate search around the per-t argmax
  int refine_rounds = 3;
  double refine_step0 = 0.0;  // 0: derived from the sample spread
  int threads = 1;
};

/// Every sample must lie in D with f finite there (D subset dom f is a
/// standing hypothesis); otherwise HypothesisRefused.
ModulusProfile modulus_profile(const FunctionOracle& f, const Region& d, double a,
                               const std::vector<double>& t_schedule, const SampleSet& d_samples,
                               const ModulusParams& params = {});

/// Certification outcome for the radial upper-semicontinuity property
/// limsup_{t->1} Delta(t) <= 0. A "supported" verdict is evidence at the
/// recorded sampling, not a proof; "refuted" carries a reproducible witness.
struct RuUscCertificate {
  enum class Verdict { Supported, Inconclusive, Refuted };

  Verdict verdict = Verdict::Inconclusive;
  double a_used = 0.0;
  ExtReal limsup_estimate = ExtReal::finite(0.0);
  int tail_length = 5;
  double eps_cert = 1e-6;
  int sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<double> a_candidates;

  struct Witness {
    double t = 0.0;
    Vec u;
    double ratio = 0.0;
    double a = 0.0;
  };
  std::optional<Witness> witness;  // present iff refuted

  bool supported() const { return verdict == Verdict::Supported; }
  std::string verdict_str() const;
};

struct CertifyParams {
  std::vector<double> t_schedule;  // empty: 1 - 2^-k, k = 1..40
  int tail = 5;
  double eps_cert = 1e-6;
  ModulusParams modulus;
};

/// Default constants to try: {1, 1 + |f(u0)|, 10, 100}.
std::vector<double> default_a_candidates(const FunctionOracle& f, const Vec& u0);

/// Tries each a in order; the first whose tail limsup estimate is <= eps_cert
/// supports the property. If every candidate stays above eps_cert at the
/// given sampling and again after doubling it, the property is refuted with
/// the worst surviving witness; otherwise the outcome is inconclusive.
RuUscCertificate certify_ru_usc(const FunctionOracle& f, const Region& d,
                                const std::vector<double>& a_candidates,
                                const SampleSet& d_samples, const CertifyParams& params = {});

/// certify_ru_usc with default candidates and samples drawn from d.
RuUscCertificate certify_ru_usc(const FunctionOracle& f, const Region& d, int sample_count,
                                std::uint64_t seed, const CertifyParams& params = {});

/// Checks the sampled modulus of a declared-convex f with a = 1 + |f(u0)|
/// against the bound (1 - t) + 1e-12.
struct ConvexBoundCheck {
  bool ok = false;
  double a = 0.0;
  std::optional<RuUscCertificate::Witness> witness;  // first violation found
};

ConvexBoundCheck convex_bound_check(const FunctionOracle& f, const Region& d,
                                    const std::vector<double>& t_schedule,
                                    const SampleSet& d_samples, int threads = 1);

}  // namespace ruusc
