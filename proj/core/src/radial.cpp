#include "ruusc/radial.hpp"

#include "ruusc/local_search.hpp"
#include "ruusc/parallel.hpp"
#include "ruusc/starshape.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ruusc {

namespace {

std::vector<double> schedule_or_default(const std::vector<double>& s) {
  return s.empty() ? geometric_t_schedule(1, 40) : s;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

RadialLimitResult radial_extension(const FunctionOracle& f, const Vec& u0, const Vec& u,
                                   const RadialParams& params) {
  if (!f.dom_contains(u0)) throw HypothesisRefused("radial_extension: u0 outside dom f");

  RadialLimitResult res;
  res.u0 = u0;
  res.u = u;
  res.t_schedule = schedule_or_default(params.t_schedule);
  res.tail_window = params.tail_window;
  res.values.reserve(res.t_schedule.size());
  for (double t : res.t_schedule) res.values.push_back(f.eval(radial_point(u0, u, t)));

  const int n = static_cast<int>(res.values.size());
  const int from = std::max(0, n - params.tail_window);
  bool any_finite = false, any_inf = false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = from; i < n; ++i) {
    const ExtReal& v = res.values[static_cast<std::size_t>(i)];
    if (v.is_infinite()) {
      any_inf = true;
    } else {
      any_finite = true;
      lo = std::min(lo, v.value());
      hi = std::max(hi, v.value());
    }
  }

  if (!any_finite) {
    // Every tail value is +inf: the radial limit is +inf.
    res.liminf_estimate = ExtReal::infinity();
    res.limsup_estimate = ExtReal::infinity();
    res.limit_estimate = ExtReal::infinity();
    res.oscillation = ExtReal::finite(0.0);
    res.limit_exists = true;
    return res;
  }

  if (!any_inf && lo > params.blowup_threshold) {
    // Finite but uniformly huge tail: check monotone divergence to +inf.
    bool nondecreasing = true;
    for (int i = from + 1; i < n; ++i)
      if (res.values[static_cast<std::size_t>(i)].value() <
          res.values[static_cast<std::size_t>(i - 1)].value())
        nondecreasing = false;
    if (nondecreasing) {
      res.liminf_estimate = ExtReal::infinity();
      res.limsup_estimate = ExtReal::infinity();
      res.limit_estimate = ExtReal::infinity();
      res.oscillation = ExtReal::finite(0.0);
      res.limit_exists = true;
      return res;
    }
  }

  res.liminf_estimate = ExtReal::finite(lo);
  res.limsup_estimate = any_inf ? ExtReal::infinity() : ExtReal::finite(hi);
  res.limit_estimate = res.values.back();
  res.oscillation = any_inf ? ExtReal::infinity() : ExtReal::finite(hi - lo);
  res.limit_exists = res.oscillation <= ExtReal::finite(params.osc_tol);
  return res;
}

// ---------------------------------------------------------------------------
// Hypothesis prechecks shared by the verifiers. Each failed check raises
// HypothesisRefused, so a verifier fail always means a counterexample
// candidate rather than a misapplied statement.
// ---------------------------------------------------------------------------

namespace {

void precheck_star_shape(const Region& d, const VerifyParams& p, std::vector<std::string>& notes) {
  SampleSet closure = closure_region(d).sample_inside(p.star_samples, mix_seed(p.seed, "star"));
  StarShapeReport rep = check_strong_star_shape(d, geometric_t_schedule(1, 20), closure, p.threads);
  if (!rep.pass)
    throw HypothesisRefused("hypothesis failed: D is not strongly star-shaped relative to u0 (" +
                            std::to_string(rep.violations.size()) + " violations)");
  notes.push_back("star-shape: no violation over " + std::to_string(rep.tested_points) +
                  " closure samples");
}

RuUscCertificate precheck_certificate(const FunctionOracle& f, const Region& d,
                                      const VerifyParams& p, std::vector<std::string>& notes) {
  if (f.traits.ru_usc.has_value()) {
    if (!*f.traits.ru_usc)
      throw HypothesisRefused("hypothesis failed: f is declared not radially u.s.c.");
    notes.push_back("radial certificate: declared by the catalog entry");
    RuUscCertificate cert;
    cert.verdict = RuUscCertificate::Verdict::Supported;
    cert.a_used = 1.0;
    return cert;
  }
  CertifyParams cp = p.certify;
  cp.modulus.threads = p.threads;
  SampleSet samples = d.sample_inside(p.cert_samples, mix_seed(p.seed, "cert"));
  const std::vector<double> cands =
      p.a_candidates.empty() ? default_a_candidates(f, d.center) : p.a_candidates;
  RuUscCertificate cert = certify_ru_usc(f, d, cands, samples, cp);
  if (!cert.supported())
    throw HypothesisRefused("hypothesis failed: radial certificate verdict is " +
                            cert.verdict_str());
  notes.push_back("radial certificate: supported with a = " + fmt(cert.a_used));
  return cert;
}

void precheck_lsc(const FunctionOracle& f, const Region& d, const VerifyParams& p,
                  std::vector<std::string>& notes) {
  SampleSet inside = d.sample_inside(std::min(p.domain_count, 200), mix_seed(p.seed, "lsc-pre"));
  EnvelopeParams ep = p.envelope;
  ep.threads = p.threads;
  ep.seed = mix_seed(p.seed, "lsc-env");
  LscReport rep = check_lsc_in_region(f, d, inside, p.lsc_tol, ep);
  if (!rep.pass)
    throw HypothesisRefused("hypothesis failed: f is not lower semicontinuous in D (" +
                            std::to_string(rep.failures.size()) + " failures, " +
                            std::to_string(rep.inconclusive_points) + " inconclusive)");
  notes.push_back("lsc in D: pass on " + std::to_string(rep.tested) + " interior samples");
}

/// A handful of probe points clearly outside the closure, for the +inf
/// agreement check.
std::vector<Vec> outside_points(const Region& d) {
  std::vector<Vec> out;
  const Box& bb = d.bounding_box;
  const double pad = 0.5 * std::max(1.0, bb.extent());
  for (int i = 0; i < d.dim && static_cast<int>(out.size()) < 4; ++i) {
    Vec lo_probe = bb.lo;
    lo_probe[i] -= pad;
    Vec hi_probe = bb.hi;
    hi_probe[i] += pad;
    if (!d.contains_closure(lo_probe)) out.push_back(lo_probe);
    if (!d.contains_closure(hi_probe)) out.push_back(hi_probe);
  }
  return out;
}

}  // namespace

TheoremReport verify_limit_exists_on_closure(const FunctionOracle& f, const Region& d,
                                             const VerifyParams& params) {
  TheoremReport rep;
  rep.statement = "limit_exists";
  rep.tolerance = params.radial.osc_tol;
  rep.resolutions = {params.resolution_scale};

  if (params.enforce_hypotheses) {
    precheck_star_shape(d, params, rep.notes);
    precheck_certificate(f, d, params, rep.notes);
  } else {
    rep.notes.push_back("hypothesis enforcement disabled by request");
  }

  SampleSet boundary = d.sample_boundary(params.boundary_count, mix_seed(params.seed, "bd"));
  SampleSet inside = d.sample_inside(std::min(params.domain_count, params.boundary_count),
                                     mix_seed(params.seed, "in"));
  std::vector<Vec> pts = boundary.points;
  pts.insert(pts.end(), inside.points.begin(), inside.points.end());

  const int n = static_cast<int>(pts.size());
  rep.points.resize(static_cast<std::size_t>(n));
  parallel_for(n, params.threads, [&](int i) {
    const Vec& u = pts[static_cast<std::size_t>(i)];
    RadialLimitResult r = radial_extension(f, d.center, u, params.radial);
    PointCheck pc;
    pc.point = u;
    pc.lhs = r.liminf_estimate;
    pc.rhs = r.limsup_estimate;
    pc.gap_value = r.oscillation;
    rep.points[static_cast<std::size_t>(i)] = std::move(pc);
  });

  double max_gap = 0.0;
  for (const auto& pc : rep.points) max_gap = std::max(max_gap, pc.gap_value.as_double());
  rep.max_gap_per_resolution = {max_gap};
  rep.passed = max_gap <= rep.tolerance;
  return rep;
}

TheoremReport verify_radial_representation(const FunctionOracle& f, const Region& d,
                                           const VerifyParams& params) {
  TheoremReport rep;
  rep.statement = "radial_representation";
  rep.tolerance = params.tolerance;

  if (params.enforce_hypotheses) {
    precheck_lsc(f, d, params, rep.notes);
    precheck_star_shape(d, params, rep.notes);
    precheck_certificate(f, d, params, rep.notes);
    rep.notes.push_back("inf over D samples is finite by construction (values are real)");
  } else {
    rep.notes.push_back("hypothesis enforcement disabled by request");
  }

  SampleSet boundary = d.sample_boundary(params.boundary_count, mix_seed(params.seed, "bd"));
  const std::vector<Vec> outside = outside_points(d);

  for (int stage = 0; stage < 2; ++stage) {
    const int scale = params.resolution_scale * (stage == 0 ? 1 : 2);
    rep.resolutions.push_back(scale);

    std::vector<PointCheck> checks(boundary.points.size());
    std::vector<char> coarse_flags(boundary.points.size(), 0);
    const int n = boundary.size();
    parallel_for(n, params.threads, [&](int i) {
      const Vec& u = boundary.points[static_cast<std::size_t>(i)];
      EnvelopeParams ep = params.envelope;
      ep.samples_per_shell *= scale;
      ep.threads = 1;
      ep.seed = mix_seed(params.seed, "env" + std::to_string(i));
      EnvelopeEstimate env = lsc_envelope_in_region(f, d, u, ep);
      if (env.inconclusive) {
        // One retry with a denser shell before giving up on the point.
        ep.samples_per_shell *= 4;
        env = lsc_envelope_in_region(f, d, u, ep);
      }
      if (env.inconclusive) {
        coarse_flags[static_cast<std::size_t>(i)] = 1;
        return;
      }
      PointCheck pc;
      pc.point = u;
      pc.lhs = env.estimate;
      RadialLimitResult r = radial_extension(f, d.center, u, params.radial);
      pc.rhs = r.limit_estimate;
      pc.gap_value = gap(pc.lhs, pc.rhs);
      checks[static_cast<std::size_t>(i)] = std::move(pc);
    });
    int inconclusive = 0;
    for (char c : coarse_flags) inconclusive += c;
    if (inconclusive > 0)
      throw HypothesisRefused("envelope sampling too coarse at " + std::to_string(inconclusive) +
                              " boundary points");

    // +inf agreement outside the closure.
    for (const Vec& u : outside) {
      PointCheck pc;
      pc.point = u;
      pc.lhs = lsc_envelope_in_region(f, d, u, params.envelope).estimate;  // inf by construction
      pc.rhs = ExtReal::infinity();
      pc.gap_value = gap(pc.lhs, pc.rhs);
      checks.push_back(std::move(pc));
    }

    double max_gap = 0.0;
    for (const auto& pc : checks) max_gap = std::max(max_gap, pc.gap_value.as_double());
    rep.max_gap_per_resolution.push_back(max_gap);
    if (stage == 1) rep.points = std::move(checks);
  }

  const double coarse = rep.max_gap_per_resolution[0];
  const double fine = rep.max_gap_per_resolution[1];
  rep.passed = fine <= rep.tolerance && fine <= coarse + 1e-12;
  rep.notes.push_back("max gap by resolution: " + fmt(coarse) + " -> " + fmt(fine));
  return rep;
}

TheoremReport verify_envelope_representation(const FunctionOracle& f, const FunctionOracle& g,
                                             const Region& domf, const VerifyParams& params) {
  TheoremReport rep;
  rep.statement = "envelope_representation";
  rep.tolerance = params.tolerance;
  rep.resolutions = {params.resolution_scale};

  EnvelopeParams ep = params.envelope;
  ep.samples_per_shell *= params.resolution_scale;

  if (params.enforce_hypotheses) {
    precheck_star_shape(domf, params, rep.notes);
    // g must agree with the envelope of f on dom f. On a star-shaped dom f
    // the certificate of the envelope then coincides with the certificate of
    // g, which is cheap to compute directly.
    SampleSet inside = domf.sample_inside(std::min(params.domain_count, 100),
                                          mix_seed(params.seed, "agree"));
    for (const auto& u : inside.points) {
      EnvelopeParams ea = ep;
      ea.seed = mix_seed(params.seed, "agree-env");
      const ExtReal env = lsc_envelope(f, u, ea).estimate;
      const ExtReal gu = g.eval(u);
      if (gap(env, gu).as_double() > params.lsc_tol)
        throw HypothesisRefused("hypothesis failed: g does not match the envelope of f on dom f");
    }
    rep.notes.push_back("g matches the envelope of f on " + std::to_string(inside.size()) +
                        " samples");
    precheck_certificate(g, domf, params, rep.notes);
  } else {
    rep.notes.push_back("hypothesis enforcement disabled by request");
  }

  SampleSet boundary = domf.sample_boundary(params.boundary_count, mix_seed(params.seed, "bd"));
  SampleSet inside = domf.sample_inside(std::min(params.domain_count, params.boundary_count),
                                        mix_seed(params.seed, "in"));
  std::vector<Vec> pts = boundary.points;
  pts.insert(pts.end(), inside.points.begin(), inside.points.end());
  for (const Vec& u : outside_points(domf)) pts.push_back(u);

  const Region closure = closure_region(domf);
  const int n = static_cast<int>(pts.size());
  rep.points.resize(static_cast<std::size_t>(n));
  parallel_for(n, params.threads, [&](int i) {
    const Vec& u = pts[static_cast<std::size_t>(i)];
    EnvelopeParams e = ep;
    e.seed = mix_seed(params.seed, "rep-env" + std::to_string(i));
    PointCheck pc;
    pc.point = u;
    pc.lhs = lsc_envelope(f, u, e).estimate;
    if (closure.contains(u)) {
      RadialLimitResult r = radial_extension(g, domf.center, u, params.radial);
      pc.rhs = r.limit_estimate;
    } else {
      pc.rhs = ExtReal::infinity();
    }
    pc.gap_value = gap(pc.lhs, pc.rhs);
    rep.points[static_cast<std::size_t>(i)] = std::move(pc);
  });

  double max_gap = 0.0;
  for (const auto& pc : rep.points) max_gap = std::max(max_gap, pc.gap_value.as_double());
  rep.max_gap_per_resolution = {max_gap};
  rep.passed = max_gap <= rep.tolerance;
  return rep;
}

TheoremReport verify_convex_representation(const FunctionOracle& f, const Region& domf,
                                           int interior_base_count, const VerifyParams& params) {
  if (params.enforce_hypotheses) {
    if (!f.traits.convex)
      throw HypothesisRefused("verify_convex_representation: f is not declared convex");
    // Bounded above near the base point, checked on a small ball.
    const double r0 = std::max(1e-9, 1e-3 * domf.bounding_box.extent());
    SampleSet probe = low_discrepancy_in_ball(domf.center, r0, 32, mix_seed(params.seed, "near-u0"));
    for (const auto& p : probe.points)
      if (f.eval(p).is_infinite())
        throw HypothesisRefused("verify_convex_representation: f unbounded near u0");
  }

  TheoremReport rep = verify_envelope_representation(f, f, domf, params);
  rep.statement = "convex_representation";

  // Independence of the base point: the radial extension from sampled
  // interior points matches the one from u0.
  SampleSet bases = domf.sample_inside(interior_base_count, mix_seed(params.seed, "bases"));
  SampleSet boundary = domf.sample_boundary(params.boundary_count, mix_seed(params.seed, "bd2"));
  double worst = 0.0;
  for (const auto& v : bases.points) {
    if (!domf.contains_interior(v)) continue;
    for (const auto& u : boundary.points) {
      RadialLimitResult from_u0 = radial_extension(f, domf.center, u, params.radial);
      RadialLimitResult from_v = radial_extension(f, v, u, params.radial);
      worst = std::max(worst, gap(from_u0.limit_estimate, from_v.limit_estimate).as_double());
    }
  }
  rep.notes.push_back("base-point independence: max gap " + fmt(worst) + " over " +
                      std::to_string(bases.size()) + " bases");
  rep.passed = rep.passed && worst <= params.tolerance;
  if (!rep.max_gap_per_resolution.empty())
    rep.max_gap_per_resolution.back() = std::max(rep.max_gap_per_resolution.back(), worst);
  return rep;
}

InfEqualityResult check_inf_equality(const FunctionOracle& f, const Region& d, double tol,
                                     const VerifyParams& params, const InfSearchParams& search) {
  std::vector<std::string> notes;
  const Region closure = closure_region(d);

  if (params.enforce_hypotheses) {
    // closure(D) subset dom f
    SampleSet probe = closure.sample_inside(std::min(params.domain_count, 200),
                                            mix_seed(params.seed, "dom-probe"));
    for (const auto& u : probe.points)
      if (!f.dom_contains(u))
        throw HypothesisRefused("check_inf_equality: closure(D) is not inside dom f");
    VerifyParams cp = params;
    precheck_certificate(f, closure, cp, notes);
    precheck_lsc(f, d, params, notes);
  }

  SampleSet inside = d.sample_inside(params.domain_count, mix_seed(params.seed, "inf-in"));
  SampleSet boundary = d.sample_boundary(params.boundary_count, mix_seed(params.seed, "inf-bd"));

  const double step0 =
      search.step0 > 0.0 ? search.step0 : 0.05 * std::max(1e-6, d.bounding_box.extent());

  auto minimize = [&](const std::vector<Vec>& candidates, auto member) {
    double best = std::numeric_limits<double>::infinity();
    Vec arg;
    for (const auto& u : candidates) {
      if (!member(u)) continue;
      const ExtReal fu = f.eval(u);
      if (fu.is_finite() && fu.value() < best) {
        best = fu.value();
        arg = u;
      }
    }
    if (!std::isfinite(best)) throw Error("check_inf_equality: no finite value sampled");
    CoordinateSearch cs;
    cs.step0 = step0;
    cs.rounds = search.rounds;
    auto [point, score] = cs.maximize(arg, -best, [&](const Vec& u) -> std::optional<double> {
      if (!member(u)) return std::nullopt;
      const ExtReal fu = f.eval(u);
      if (fu.is_infinite()) return std::nullopt;
      return -fu.value();
    });
    return std::pair<Vec, double>(point, -score);
  };

  std::vector<Vec> inside_pool = inside.points;
  inside_pool.push_back(d.center);
  std::vector<Vec> closure_pool = inside_pool;
  closure_pool.insert(closure_pool.end(), boundary.points.begin(), boundary.points.end());

  InfEqualityResult res;
  auto [arg_in, val_in] = minimize(inside_pool, [&](const Vec& u) { return d.contains(u); });
  auto [arg_cl, val_cl] = minimize(closure_pool, [&](const Vec& u) { return d.contains_closure(u); });
  res.inf_inside = val_in;
  res.inf_closure = val_cl;
  res.argmin_inside = arg_in;
  res.argmin_closure = arg_cl;
  res.gap = std::abs(val_in - val_cl);
  res.pass = res.gap <= tol;
  return res;
}

}  // namespace ruusc
