#include "ruusc/algebra.hpp"

#include "ruusc/catalog.hpp"
#include "ruusc/parallel.hpp"
#include "ruusc/starshape.hpp"

#include <algorithm>
#include <cmath>

namespace ruusc {

Provenance Provenance::base(std::string name, std::vector<double> params) {
  Provenance p;
  p.op = "base";
  p.base_name = std::move(name);
  p.params = std::move(params);
  return p;
}

FunctionOracle reconstruct(const Provenance& p) {
  if (p.op == "base") return make_catalog_function(p.base_name, p.params);
  if (p.op == "translate") return shifted(reconstruct(p.children.at(0)), p.params.at(0));
  if (p.op == "scale") return scaled(reconstruct(p.children.at(0)), p.params.at(0));
  if (p.op == "add") return sum(reconstruct(p.children.at(0)), reconstruct(p.children.at(1)));
  if (p.op == "multiply")
    return pointwise_product(reconstruct(p.children.at(0)), reconstruct(p.children.at(1)));
  if (p.op == "infconv") {
    const FunctionOracle f = reconstruct(p.children.at(0));
    const FunctionOracle g = reconstruct(p.children.at(1));
    const int dim = f.dim;
    Box box;
    box.lo = Vec(dim);
    box.hi = Vec(dim);
    for (int i = 0; i < dim; ++i) {
      box.lo[i] = p.params.at(static_cast<std::size_t>(i));
      box.hi[i] = p.params.at(static_cast<std::size_t>(dim + i));
    }
    const int res = static_cast<int>(p.params.at(static_cast<std::size_t>(2 * dim)));
    return inf_convolution(f, g, box, res).as_oracle();
  }
  throw SpecError("reconstruct: unknown provenance op '" + p.op + "'");
}

CertifiedFunction certified_base(const std::string& catalog_name, const std::vector<double>& params,
                                 const Region& d, int cert_samples, std::uint64_t seed,
                                 const CertifyParams& cp) {
  CertifiedFunction cf;
  cf.oracle = make_catalog_function(catalog_name, params);
  cf.provenance = Provenance::base(catalog_name, params);
  cf.base_point = d.center;
  cf.certificate = certify_ru_usc(cf.oracle, d, cert_samples, seed, cp);
  return cf;
}

namespace {

void require_supported(const CertifiedFunction& f, const char* who) {
  if (!f.supported())
    throw HypothesisRefused(std::string(who) + ": input '" + f.oracle.name +
                            "' has no supporting certificate");
}

struct SampledRange {
  double min_value = 0.0;
  double max_abs = 0.0;
};

SampledRange sample_range(const FunctionOracle& f, const Region& d, const AlgebraParams& p,
                          const char* tag) {
  SampleSet s = d.sample_inside(p.hypothesis_samples, mix_seed(p.seed, tag));
  SampledRange r;
  r.min_value = std::numeric_limits<double>::infinity();
  for (const auto& u : s.points) {
    const ExtReal v = f.eval(u);
    if (v.is_infinite())
      throw HypothesisRefused("hypothesis sampling: '" + f.name + "' is not finite on D");
    r.min_value = std::min(r.min_value, v.value());
    r.max_abs = std::max(r.max_abs, std::abs(v.value()));
  }
  return r;
}

/// Bounded below on D: established by a declared bound, or by sampling when
/// the entry is declared continuous (D is bounded). Otherwise unverifiable.
bool bounded_below_established(const FunctionOracle& f, const SampledRange& r,
                               const AlgebraParams& p) {
  if (f.traits.lower_bound) return true;
  if (f.traits.continuous) return r.min_value > -p.bound_threshold;
  return false;
}

bool bounded_established(const FunctionOracle& f, const SampledRange& r, const AlgebraParams& p) {
  if (f.traits.sup_abs_on_dom) return true;
  if (f.traits.continuous) return r.max_abs < p.bound_threshold;
  return false;
}

RuUscCertificate propagated_cert(const RuUscCertificate& src, double a_new) {
  RuUscCertificate c = src;
  c.a_used = a_new;
  return c;
}

}  // namespace

CertifiedFunction translate(const CertifiedFunction& f, double c) {
  require_supported(f, "translate");
  CertifiedFunction out;
  out.oracle = shifted(f.oracle, c);
  out.base_point = f.base_point;
  out.certificate = propagated_cert(*f.certificate, f.certificate->a_used + std::abs(c));
  out.certificate_propagated = c != 0.0 || f.certificate_propagated;
  out.provenance.op = "translate";
  out.provenance.params = {c};
  out.provenance.children = {f.provenance};
  return out;
}

CertifiedFunction scale(const CertifiedFunction& f, double lambda) {
  require_supported(f, "scale");
  if (lambda < 0.0) throw HypothesisRefused("scale: lambda must be nonnegative");
  CertifiedFunction out;
  out.oracle = scaled(f.oracle, lambda);
  out.base_point = f.base_point;
  // Constant 1; the decay bound rescales by max{lambda a, 1}.
  out.certificate = propagated_cert(*f.certificate, 1.0);
  out.certificate->limsup_estimate =
      std::max(lambda * f.certificate->a_used, 1.0) * f.certificate->limsup_estimate;
  out.certificate_propagated = lambda != 1.0 || f.certificate_propagated;
  out.provenance.op = "scale";
  out.provenance.params = {lambda, std::max(lambda * f.certificate->a_used, 1.0)};
  out.provenance.children = {f.provenance};
  return out;
}

CertifiedFunction add(const CertifiedFunction& f, const CertifiedFunction& g, const Region& d,
                      const AlgebraParams& params) {
  require_supported(f, "add");
  require_supported(g, "add");

  const SampledRange rf = sample_range(f.oracle, d, params, "add-f");
  const SampledRange rg = sample_range(g.oracle, d, params, "add-g");

  int route = -1;
  if (bounded_below_established(f.oracle, rf, params) &&
      bounded_below_established(g.oracle, rg, params))
    route = 0;  // both bounded below
  else if (bounded_established(g.oracle, rg, params))
    route = 1;  // g bounded
  if (route < 0)
    throw HypothesisRefused(
        "add: neither hypothesis route holds on samples (f,g bounded below: no; g bounded: no)");

  CertifiedFunction out;
  out.oracle = sum(f.oracle, g.oracle);
  out.base_point = d.center;
  // delta(eps) = eps max{a + b, 1}: report with constant 1.
  out.certificate = propagated_cert(*f.certificate, 1.0);
  out.certificate->limsup_estimate =
      std::max(f.certificate->a_used + g.certificate->a_used, 1.0) *
      max(f.certificate->limsup_estimate, g.certificate->limsup_estimate);
  out.certificate_propagated = true;
  out.provenance.op = "add";
  out.provenance.params = {static_cast<double>(route)};
  out.provenance.children = {f.provenance, g.provenance};
  return out;
}

CertifiedFunction multiply(const CertifiedFunction& f, const CertifiedFunction& g, const Region& d,
                           const AlgebraParams& params) {
  require_supported(f, "multiply");
  require_supported(g, "multiply");

  const SampledRange rf = sample_range(f.oracle, d, params, "mul-f");
  const SampledRange rg = sample_range(g.oracle, d, params, "mul-g");
  if (!(rf.min_value > 0.0))
    throw HypothesisRefused("multiply: sampled infimum of f on D is not strictly positive (" +
                            std::to_string(rf.min_value) + ")");
  if (!(rg.min_value > 0.0))
    throw HypothesisRefused("multiply: sampled infimum of g on D is not strictly positive (" +
                            std::to_string(rg.min_value) + ")");

  CertifiedFunction out;
  out.oracle = pointwise_product(f.oracle, g.oracle);
  out.base_point = d.center;
  out.certificate = propagated_cert(*f.certificate, 1.0);
  // The decay factor involves 1 + 1/inf f + 1/inf g; stored with the margins.
  const double factor = 1.0 + 1.0 / rf.min_value + 1.0 / rg.min_value;
  out.certificate->limsup_estimate =
      factor * max(f.certificate->limsup_estimate, g.certificate->limsup_estimate);
  out.certificate_propagated = true;
  out.provenance.op = "multiply";
  out.provenance.params = {rf.min_value, rg.min_value, factor};
  out.provenance.children = {f.provenance, g.provenance};
  return out;
}

HolderCheck check_holder_perturbation(const FunctionOracle& g, double alpha, double beta, double c,
                                      double c_prime, const std::function<double(double)>& delta,
                                      const Region& d, const std::vector<double>& t_schedule,
                                      const SampleSet& samples) {
  if (!(c > 0.0)) throw HypothesisRefused("check_holder_perturbation: c must be positive");
  if (!(beta >= alpha) || alpha < 0.0)
    throw HypothesisRefused("check_holder_perturbation: need beta >= alpha >= 0");
  if (samples.empty()) throw SpecError("check_holder_perturbation: empty sample set");

  HolderCheck out;
  const double u0a = std::pow(d.center.norm(), alpha);
  const double slack = 1e-12;
  for (const auto& u : samples.points) {
    const ExtReal gu_e = g.eval(u);
    if (gu_e.is_infinite()) {
      out.which = "A2";
      out.witness = u;
      return out;
    }
    const double gu = gu_e.value();
    // A2: lower growth
    if (c * std::pow(u.norm(), beta) - c_prime > gu + slack) {
      out.which = "A2";
      out.witness = u;
      return out;
    }
    // A1: radial continuity with the delta(t) profile
    const double envelope = 1.0 + std::pow(u.norm(), alpha) + u0a;
    for (double t : t_schedule) {
      const ExtReal gt = g.eval(radial_point(d.center, u, t));
      if (gt.is_infinite()) {
        out.which = "A1";
        out.witness = u;
        return out;
      }
      if (std::abs(gt.value() - gu) > delta(t) * envelope + slack) {
        out.which = "A1";
        out.witness = u;
        return out;
      }
    }
  }
  out.ok = true;
  out.a_derived = c_prime + c * (2.0 + u0a);
  return out;
}

TabulatedFunction inf_convolution(const FunctionOracle& f, const FunctionOracle& g, const Box& box,
                                  int res, int threads) {
  if (f.dim != g.dim) throw SpecError("inf_convolution: dimension mismatch");
  if (f.dim != box.dim()) throw SpecError("inf_convolution: box dimension mismatch");

  SampleSet grid = uniform_grid(box, res);
  const auto n = static_cast<int>(grid.points.size());

  // Cache g on the grid once; f is evaluated at the differences.
  std::vector<ExtReal> gvals(grid.points.size(), ExtReal::infinity());
  for (std::size_t j = 0; j < grid.points.size(); ++j) gvals[j] = g.eval(grid.points[j]);

  std::vector<ExtReal> values(grid.points.size(), ExtReal::infinity());
  parallel_for(n, threads, [&](int i) {
    const Vec& u = grid.points[static_cast<std::size_t>(i)];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.points.size(); ++j) {
      if (gvals[j].is_infinite()) continue;
      const ExtReal fv = f.eval(u - grid.points[j]);
      if (fv.is_infinite()) continue;
      best = std::min(best, fv.value() + gvals[j].value());
    }
    if (std::isfinite(best)) values[static_cast<std::size_t>(i)] = ExtReal::finite(best);
    // empty effective min set: the value stays +inf, which is legal
  });

  std::vector<int> res_v(static_cast<std::size_t>(box.dim()), res);
  return TabulatedFunction(box, res_v, std::move(values), f.name + " infconv " + g.name);
}

CertifiedFunction check_infconv_ruusc(const CertifiedFunction& f, const CertifiedFunction& g,
                                      InfConvRoute route, const Box& box, int res,
                                      const AlgebraParams& params, const CertifyParams& cp) {
  require_supported(f, "check_infconv_ruusc");
  require_supported(g, "check_infconv_ruusc");
  if (g.base_point.size() == 0 || g.base_point.norm() > 1e-12)
    throw HypothesisRefused("check_infconv_ruusc: g must be certified relative to 0");
  if (!g.oracle.dom_contains(Vec::Zero(g.oracle.dim)))
    throw HypothesisRefused("check_infconv_ruusc: 0 is not in dom g");

  if (route == InfConvRoute::BothBoundedBelow) {
    if (!f.oracle.traits.lower_bound || !g.oracle.traits.lower_bound)
      throw HypothesisRefused(
          "check_infconv_ruusc: route needs declared lower bounds for f and g");
  } else {
    if (!g.oracle.traits.sup_abs_on_dom)
      throw HypothesisRefused(
          "check_infconv_ruusc: bounded-g route needs a declared bound on |g| over dom g");
  }

  TabulatedFunction tab = inf_convolution(f.oracle, g.oracle, box, res, cp.modulus.threads);

  // Certify the tabulation on its finite nodes relative to f's base point.
  auto shared = std::make_shared<TabulatedFunction>(tab);
  const Vec u0 = f.base_point;
  if (shared->at(u0).v.is_infinite())
    throw HypothesisRefused("check_infconv_ruusc: base point outside dom of the convolution");

  Region dom_region;
  dom_region.dim = box.dim();
  dom_region.center = u0;
  dom_region.name = "infconv-dom";
  dom_region.bounding_box = box;
  dom_region.contains_fn = [shared](const Vec& x) { return shared->at(x).v.is_finite(); };
  dom_region.closure_fn = dom_region.contains_fn;
  dom_region.interior_fn = dom_region.contains_fn;

  SampleSet nodes;
  for (long k = 0; k < tab.node_count(); ++k) {
    if (tab.values()[static_cast<std::size_t>(k)].is_finite()) nodes.points.push_back(tab.node(k));
  }
  nodes.provenance = "infconv-finite-nodes";
  if (nodes.empty()) throw HypothesisRefused("check_infconv_ruusc: empty effective domain");

  FunctionOracle oracle = tab.as_oracle();
  RuUscCertificate cert =
      certify_ru_usc(oracle, dom_region, default_a_candidates(oracle, u0), nodes, cp);

  CertifiedFunction out;
  out.oracle = std::move(oracle);
  out.base_point = u0;
  out.certificate = std::move(cert);
  out.certificate_propagated = false;  // certified from scratch on the tabulation
  out.provenance.op = "infconv";
  for (int i = 0; i < box.dim(); ++i) out.provenance.params.push_back(box.lo[i]);
  for (int i = 0; i < box.dim(); ++i) out.provenance.params.push_back(box.hi[i]);
  out.provenance.params.push_back(static_cast<double>(res));
  out.provenance.params.push_back(route == InfConvRoute::BothBoundedBelow ? 0.0 : 1.0);
  out.provenance.children = {f.provenance, g.provenance};
  (void)params;
  return out;
}

}  // namespace ruusc
