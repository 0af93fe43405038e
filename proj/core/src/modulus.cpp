#include "ruusc/modulus.hpp"

#include "ruusc/local_search.hpp"
#include "ruusc/parallel.hpp"
#include "ruusc/starshape.hpp"

#include <algorithm>
#include <cmath>

namespace ruusc {

namespace {

double sample_spread(const SampleSet& samples) {
  if (samples.empty()) return 1.0;
  Vec lo = samples.points.front();
  Vec hi = samples.points.front();
  for (const auto& p : samples.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return std::max(1e-6, (hi - lo).maxCoeff());
}

double ratio_at(const FunctionOracle& f, const Vec& u0, double a, double t, const Vec& u,
                double fu) {
  const ExtReal mapped = f.eval(radial_point(u0, u, t));
  if (mapped.is_infinite()) return std::numeric_limits<double>::infinity();
  return (mapped.value() - fu) / (a + std::abs(fu));
}

}  // namespace

ExtReal ModulusProfile::tail_limsup(int tail) const {
  if (delta_estimates.empty()) throw SpecError("ModulusProfile: empty profile");
  const int n = static_cast<int>(delta_estimates.size());
  const int from = std::max(0, n - tail);
  ExtReal m = delta_estimates[static_cast<std::size_t>(from)];
  for (int i = from + 1; i < n; ++i) m = max(m, delta_estimates[static_cast<std::size_t>(i)]);
  return m;
}

ModulusProfile modulus_profile(const FunctionOracle& f, const Region& d, double a,
                               const std::vector<double>& t_schedule, const SampleSet& d_samples,
                               const ModulusParams& params) {
  if (!(a > 0.0)) throw SpecError("modulus_profile: a must be positive");
  if (t_schedule.empty()) throw SpecError("modulus_profile: empty t schedule");
  if (d_samples.empty()) throw SpecError("modulus_profile: empty sample set");

  // Standing hypothesis: D subset dom f, samples inside D.
  std::vector<double> fvals(d_samples.points.size());
  for (std::size_t i = 0; i < d_samples.points.size(); ++i) {
    const Vec& u = d_samples.points[i];
    if (!d.contains(u)) throw HypothesisRefused("modulus_profile: sample outside D");
    const ExtReal fu = f.eval(u);
    if (fu.is_infinite())
      throw HypothesisRefused("modulus_profile: f is not finite on D (sample outside dom f)");
    fvals[i] = fu.value();
  }

  ModulusProfile prof;
  prof.a = a;
  prof.t_schedule = t_schedule;
  prof.sample_count = d_samples.size();
  const int nt = static_cast<int>(t_schedule.size());
  prof.delta_estimates.resize(static_cast<std::size_t>(nt), ExtReal::finite(0.0));
  prof.argmax_points.resize(static_cast<std::size_t>(nt));

  const double step0 =
      params.refine_step0 > 0.0 ? params.refine_step0 : 0.1 * sample_spread(d_samples);
  std::vector<std::vector<ModulusProfile::GeometryViolation>> viol(static_cast<std::size_t>(nt));

  parallel_for(nt, params.threads, [&](int it) {
    const double t = t_schedule[static_cast<std::size_t>(it)];
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    bool inf_hit = false;
    for (std::size_t i = 0; i < d_samples.points.size(); ++i) {
      const double r = ratio_at(f, d.center, a, t, d_samples.points[i], fvals[i]);
      if (std::isinf(r)) {
        viol[static_cast<std::size_t>(it)].push_back({t, d_samples.points[i]});
        inf_hit = true;
        continue;
      }
      if (r > best) {
        best = r;
        best_i = i;
      }
    }
    if (inf_hit) {
      prof.delta_estimates[static_cast<std::size_t>(it)] = ExtReal::infinity();
      prof.argmax_points[static_cast<std::size_t>(it)] =
          viol[static_cast<std::size_t>(it)].front().u;
      return;
    }

    Vec arg = d_samples.points[best_i];
    if (params.refine) {
      CoordinateSearch cs;
      cs.step0 = step0;
      cs.rounds = params.refine_rounds;
      auto score = [&](const Vec& u) -> std::optional<double> {
        if (!d.contains(u)) return std::nullopt;
        const ExtReal fu = f.eval(u);
        if (fu.is_infinite()) return std::nullopt;
        const double r = ratio_at(f, d.center, a, t, u, fu.value());
        if (std::isinf(r)) return std::nullopt;  // refinement stays inside the good geometry
        return r;
      };
      auto [ru, rv] = cs.maximize(arg, best, score);
      arg = std::move(ru);
      best = rv;
    }
    prof.delta_estimates[static_cast<std::size_t>(it)] = ExtReal::finite(best);
    prof.argmax_points[static_cast<std::size_t>(it)] = std::move(arg);
  });

  for (auto& per_t : viol)
    for (auto& v : per_t) prof.violations.push_back(std::move(v));
  prof.violations.shrink_to_fit();
  return prof;
}

std::string RuUscCertificate::verdict_str() const {
  switch (verdict) {
    case Verdict::Supported: return "ru-usc-supported";
    case Verdict::Refuted: return "refuted";
    default: return "inconclusive";
  }
}

std::vector<double> default_a_candidates(const FunctionOracle& f, const Vec& u0) {
  const ExtReal f0 = f.eval(u0);
  std::vector<double> a = {1.0};
  if (f0.is_finite() && std::abs(f0.value()) > 0.0) a.push_back(1.0 + std::abs(f0.value()));
  a.push_back(10.0);
  a.push_back(100.0);
  return a;
}

RuUscCertificate certify_ru_usc(const FunctionOracle& f, const Region& d,
                                const std::vector<double>& a_candidates,
                                const SampleSet& d_samples, const CertifyParams& params) {
  if (a_candidates.empty()) throw SpecError("certify_ru_usc: empty a_candidates");
  const std::vector<double> ts =
      params.t_schedule.empty() ? geometric_t_schedule(1, 40) : params.t_schedule;

  RuUscCertificate cert;
  cert.tail_length = params.tail;
  cert.eps_cert = params.eps_cert;
  cert.sample_count = d_samples.size();
  cert.a_candidates = a_candidates;

  std::vector<ModulusProfile> base;
  base.reserve(a_candidates.size());
  for (double a : a_candidates) {
    base.push_back(modulus_profile(f, d, a, ts, d_samples, params.modulus));
    const ExtReal tail = base.back().tail_limsup(params.tail);
    if (tail <= ExtReal::finite(params.eps_cert)) {
      cert.verdict = RuUscCertificate::Verdict::Supported;
      cert.a_used = a;
      cert.limsup_estimate = tail;
      return cert;
    }
  }

  // No candidate supported. Refute only if the violation survives doubling
  // the sampling for every candidate; otherwise stay inconclusive.
  SampleSet refined = d_samples;
  if (d.inside_sampler) {
    try {
      refined = d.sample_inside(2 * d_samples.size(), mix_seed(77, "cert-refine"));
    } catch (const Error&) {
      refined = d_samples;
    }
  }
  bool all_stay_above = true;
  ExtReal worst_tail = ExtReal::infinity();
  ModulusProfile const* worst_prof = nullptr;
  std::vector<ModulusProfile> fine;
  fine.reserve(a_candidates.size());
  for (std::size_t ia = 0; ia < a_candidates.size(); ++ia) {
    fine.push_back(modulus_profile(f, d, a_candidates[ia], ts, refined, params.modulus));
    const ExtReal tail = fine.back().tail_limsup(params.tail);
    if (tail <= ExtReal::finite(params.eps_cert)) {
      all_stay_above = false;
      break;
    }
    if (tail < worst_tail || worst_prof == nullptr) {
      worst_tail = tail;
      worst_prof = &fine.back();
    }
  }

  if (all_stay_above && worst_prof != nullptr) {
    cert.verdict = RuUscCertificate::Verdict::Refuted;
    cert.a_used = worst_prof->a;
    cert.limsup_estimate = worst_tail;
    // Witness: the tail entry attaining the worst ratio, replayable from
    // (a, t, u).
    const int n = static_cast<int>(worst_prof->delta_estimates.size());
    const int from = std::max(0, n - params.tail);
    int best_i = from;
    for (int i = from; i < n; ++i)
      if (worst_prof->delta_estimates[static_cast<std::size_t>(best_i)] <
          worst_prof->delta_estimates[static_cast<std::size_t>(i)])
        best_i = i;
    RuUscCertificate::Witness w;
    w.t = worst_prof->t_schedule[static_cast<std::size_t>(best_i)];
    w.u = worst_prof->argmax_points[static_cast<std::size_t>(best_i)];
    w.ratio = worst_prof->delta_estimates[static_cast<std::size_t>(best_i)].as_double();
    w.a = worst_prof->a;
    cert.witness = std::move(w);
  } else {
    cert.verdict = RuUscCertificate::Verdict::Inconclusive;
    cert.a_used = a_candidates.back();
    cert.limsup_estimate = base.back().tail_limsup(params.tail);
  }
  return cert;
}

RuUscCertificate certify_ru_usc(const FunctionOracle& f, const Region& d, int sample_count,
                                std::uint64_t seed, const CertifyParams& params) {
  SampleSet samples = d.sample_inside(sample_count, seed);
  RuUscCertificate cert =
      certify_ru_usc(f, d, default_a_candidates(f, d.center), samples, params);
  cert.seed = seed;
  return cert;
}

ConvexBoundCheck convex_bound_check(const FunctionOracle& f, const Region& d,
                                    const std::vector<double>& t_schedule,
                                    const SampleSet& d_samples, int threads) {
  if (!f.traits.convex)
    throw HypothesisRefused("convex_bound_check: f is not declared convex");
  const ExtReal f0 = f.eval(d.center);
  if (f0.is_infinite()) throw HypothesisRefused("convex_bound_check: u0 outside dom f");
  const double a = 1.0 + std::abs(f0.value());

  ModulusParams mp;
  mp.refine = true;
  mp.threads = threads;
  const ModulusProfile prof = modulus_profile(f, d, a, t_schedule, d_samples, mp);

  ConvexBoundCheck out;
  out.a = a;
  out.ok = true;
  for (std::size_t i = 0; i < prof.delta_estimates.size(); ++i) {
    const double bound = (1.0 - prof.t_schedule[i]) + 1e-12;
    if (!(prof.delta_estimates[i] <= ExtReal::finite(bound))) {
      out.ok = false;
      RuUscCertificate::Witness w;
      w.t = prof.t_schedule[i];
      w.u = prof.argmax_points[i];
      w.ratio = prof.delta_estimates[i].as_double();
      w.a = a;
      out.witness = std::move(w);
      break;
    }
  }
  return out;
}

}  // namespace ruusc
