#pragma once

#include "ruusc/envelope.hpp"
#include "ruusc/modulus.hpp"
#include "ruusc/oracle.hpp"
#include "ruusc/region.hpp"
#include "ruusc/report.hpp"

#include <optional>
#include <vector>

namespace ruusc {

/// Values of f along the segment from u0 to u for a schedule of t -> 1, with
/// tail liminf/limsup estimates and an oscillation-based existence flag.
struct RadialLimitResult {
  Vec u0;
  Vec u;
  std::vector<double> t_schedule;
  std::vector<ExtReal> values;

  ExtReal liminf_estimate = ExtReal::infinity();  // min over the tail window
  ExtReal limsup_estimate = ExtReal::infinity();  // max over the tail window
  ExtReal limit_estimate = ExtReal::infinity();   // value at the largest t
  ExtReal oscillation = ExtReal::finite(0.0);     // limsup - liminf over the tail
  bool limit_exists = false;
  int tail_window = 8;
};

struct RadialParams {
  std::vector<double> t_schedule;  // empty: 1 - 2^-k, k = 1..40
  int tail_window = 8;
  double osc_tol = 1e-6;
  /// Tail values all above this threshold are treated as divergence to +inf
  /// (a monotone blow-up has a limit).
  double blowup_threshold = 1e9;
};

RadialLimitResult radial_extension(const FunctionOracle& f, const Vec& u0, const Vec& u,
                                   const RadialParams& params = {});

/// Common knobs of the statement verifiers. Estimator sample counts scale
/// with `resolution_scale`; evaluation point sets do not, so reports stay
/// comparable across scales.
struct VerifyParams {
  std::uint64_t seed = 7;
  int resolution_scale = 1;
  int boundary_count = 50;
  int domain_count = 400;
  int star_samples = 1000;
  int cert_samples = 1000;
  double tolerance = 1e-3;
  double lsc_tol = 1e-3;
  RadialParams radial;
  EnvelopeParams envelope;
  CertifyParams certify;
  std::vector<double> a_candidates;  // empty: defaults from f and u0
  int threads = 1;
  /// When false, hypothesis prechecks are skipped (to demonstrate what the
  /// conclusion looks like when a hypothesis fails). Default on: verifiers
  /// refuse to run on unverified hypotheses.
  bool enforce_hypotheses = true;
};

/// Existence of the radial limit at every sampled point of the closure:
/// oscillation of the tail values <= osc_tol. Hypotheses: star-shape of D and
/// a supported (or declared) radial upper-semicontinuity certificate.
TheoremReport verify_limit_exists_on_closure(const FunctionOracle& f, const Region& d,
                                             const VerifyParams& params = {});

/// Boundary representation: the envelope of f + chi_D equals the radial
/// limit from u0 at every sampled boundary point (and is +inf outside the
/// closure). Hypotheses: f lower semicontinuous in D, D star-shaped, radial
/// certificate supported, inf of f over samples finite. Runs at two
/// estimator resolutions; passing requires the finest gaps within tolerance
/// and a max gap that does not grow under refinement.
TheoremReport verify_radial_representation(const FunctionOracle& f, const Region& d,
                                           const VerifyParams& params = {});

/// Whole-envelope representation: lsc envelope of f == radial limit of g
/// from u0 on dom(envelope), +inf outside. `domf` describes dom f (it must
/// be star-shaped relative to its center); g must agree with the envelope
/// of f on dom f.
TheoremReport verify_envelope_representation(const FunctionOracle& f, const FunctionOracle& g,
                                             const Region& domf, const VerifyParams& params = {});

/// Convex case: envelope of f equals its radial extension, and the radial
/// extension does not depend on the interior base point (checked for
/// `interior_base_count` sampled interior points).
TheoremReport verify_convex_representation(const FunctionOracle& f, const Region& domf,
                                           int interior_base_count = 3,
                                           const VerifyParams& params = {});

/// inf_D f == inf_closure(D) f, both estimated by pooled sampling plus local
/// descent. Hypotheses: closure(D) inside dom f, certificate on the closure,
/// f lower semicontinuous in D.
struct InfEqualityResult {
  double inf_inside = 0.0;
  double inf_closure = 0.0;
  double gap = 0.0;
  bool pass = false;
  Vec argmin_inside;
  Vec argmin_closure;
};

struct InfSearchParams {
  int rounds = 24;
  double step0 = 0.0;  // 0: derived from the region extent
};

InfEqualityResult check_inf_equality(const FunctionOracle& f, const Region& d, double tol = 1e-6,
                                     const VerifyParams& params = {},
                                     const InfSearchParams& search = {});

}  // namespace ruusc
