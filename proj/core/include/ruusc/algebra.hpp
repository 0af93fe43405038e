#pragma once

#include "ruusc/modulus.hpp"
#include "ruusc/oracle.hpp"
#include "ruusc/region.hpp"
#include "ruusc/tabulated.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ruusc {

/// Construction tree of a derived function: catalog base entries plus the
/// applied operations. Reconstructing from the tree reproduces the oracle
/// bit-exactly.
struct Provenance {
  std::string op;  // "base", "translate", "scale", "add", "multiply", "infconv"
  std::string base_name;          // op == "base"
  std::vector<double> params;     // numeric parameters of the node
  std::vector<Provenance> children;

  static Provenance base(std::string name, std::vector<double> params);
};

/// Oracle together with an optional supporting certificate and provenance.
/// Propagated certificates store the constants suggested by the calculus
/// (a + |c|, max{lambda a, 1}, ...), but they are hints: recertification from
/// scratch is the ground truth.
struct CertifiedFunction {
  FunctionOracle oracle;
  std::optional<RuUscCertificate> certificate;
  bool certificate_propagated = false;
  Vec base_point;  // the u0 the certificate is relative to
  Provenance provenance;

  bool supported() const { return certificate && certificate->supported(); }
};

CertifiedFunction certified_base(const std::string& catalog_name, const std::vector<double>& params,
                                 const Region& d, int cert_samples = 600, std::uint64_t seed = 7,
                                 const CertifyParams& cp = {});

/// Rebuilds the oracle from a provenance tree (bit-exact).
FunctionOracle reconstruct(const Provenance& p);

// --- calculus ---------------------------------------------------------------
// Each operation requires supporting certificates on its inputs and verifies
// its own hypotheses on samples; a violated or unverifiable hypothesis
// raises HypothesisRefused.

struct AlgebraParams {
  int hypothesis_samples = 600;
  std::uint64_t seed = 7;
  /// Sampled |values| beyond this threshold count as unbounded when no
  /// declared bound is available and the function is not continuous on a
  /// bounded region.
  double bound_threshold = 1e12;
};

/// f + c. Propagates the certificate constant a + |c|.
CertifiedFunction translate(const CertifiedFunction& f, double c);

/// lambda * f for lambda >= 0. Propagates constant 1 with the bound scale
/// max{lambda a, 1}.
CertifiedFunction scale(const CertifiedFunction& f, double lambda);

/// f + g on D. Hypothesis routes: both bounded below on D, or g bounded on
/// D; the route that applied is recorded in the provenance parameters.
CertifiedFunction add(const CertifiedFunction& f, const CertifiedFunction& g, const Region& d,
                      const AlgebraParams& params = {});

/// f * g on D; requires strictly positive sampled infima of both factors.
CertifiedFunction multiply(const CertifiedFunction& f, const CertifiedFunction& g, const Region& d,
                           const AlgebraParams& params = {});

/// Radial-Hoelder perturbation test for g:
///   (A1) |g(t u + (1-t) u0) - g(u)| <= delta(t) (1 + |u|^alpha + |u0|^alpha)
///   (A2) c |u|^beta - c' <= g(u),  beta >= alpha, c > 0.
/// When both hold on the samples, g supports the radial property with
/// a = c' + c (2 + |u0|^alpha), and f + g is admissible for a certified f.
struct HolderCheck {
  bool ok = false;
  double a_derived = 0.0;
  std::optional<Vec> witness;  // first violating sample
  std::string which;           // "A1" or "A2" when violated
};

HolderCheck check_holder_perturbation(const FunctionOracle& g, double alpha, double beta, double c,
                                      double c_prime, const std::function<double(double)>& delta,
                                      const Region& d, const std::vector<double>& t_schedule,
                                      const SampleSet& samples);

/// Grid min-plus convolution (f ▿ g)(u) = min_v { f(u - v) + g(v) } over the
/// nodes of a uniform grid; +inf-aware, brute force. Off-node queries of the
/// result interpolate linearly and are flagged.
TabulatedFunction inf_convolution(const FunctionOracle& f, const FunctionOracle& g, const Box& box,
                                  int res, int threads = 1);

/// Certifies the tabulated inf-convolution. Routes: (1) both inputs bounded
/// below, (2) g bounded on dom g. g must be certified relative to 0.
enum class InfConvRoute { BothBoundedBelow, GBounded };

CertifiedFunction check_infconv_ruusc(const CertifiedFunction& f, const CertifiedFunction& g,
                                      InfConvRoute route, const Box& box, int res,
                                      const AlgebraParams& params = {},
                                      const CertifyParams& cp = {});

}  // namespace ruusc
