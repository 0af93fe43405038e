#include "ruusc/envelope.hpp"

#include "ruusc/parallel.hpp"
#include "ruusc/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace ruusc {

namespace {

struct Membership {
  const Region* d = nullptr;  // null: no restriction
  bool admits(const Vec& x) const { return d == nullptr || d->contains(x); }
};

EnvelopeEstimate envelope_impl(const FunctionOracle& f, const Vec& u, const Membership& member,
                               const EnvelopeParams& params) {
  if (params.levels < 1 || params.samples_per_shell < 1 || !(params.r0 > 0.0))
    throw SpecError("lsc_envelope: bad parameters");

  EnvelopeEstimate est;
  est.point = u;
  est.samples_per_shell = params.samples_per_shell;
  est.seed = params.seed;
  est.radius_schedule.reserve(static_cast<std::size_t>(params.levels));
  for (int k = 0; k < params.levels; ++k)
    est.radius_schedule.push_back(params.r0 * std::ldexp(1.0, -k));

  // Pool all shell samples; the inf over ball k then uses every sampled
  // point within its radius, which makes the shell infima monotone.
  struct Pt {
    double dist;
    double value;
  };
  std::vector<Pt> pool;
  pool.reserve(static_cast<std::size_t>(params.levels * params.samples_per_shell + 1));
  bool center_admitted = member.admits(u);
  if (center_admitted) {
    const ExtReal fu = f.eval(u);
    if (fu.is_finite()) pool.push_back({0.0, fu.value()});
  }
  for (int k = 0; k < params.levels; ++k) {
    const double r = est.radius_schedule[static_cast<std::size_t>(k)];
    SampleSet shell = low_discrepancy_in_ball(u, r, params.samples_per_shell,
                                              mix_seed(params.seed, "shell" + std::to_string(k)));
    for (const auto& p : shell.points) {
      if (!member.admits(p)) continue;
      const ExtReal fp = f.eval(p);
      if (fp.is_infinite()) continue;
      pool.push_back({(p - u).norm(), fp.value()});
    }
  }

  est.shell_infima.assign(static_cast<std::size_t>(params.levels), ExtReal::infinity());
  for (int k = 0; k < params.levels; ++k) {
    const double r = est.radius_schedule[static_cast<std::size_t>(k)];
    double inf_k = std::numeric_limits<double>::infinity();
    for (const auto& p : pool)
      if (p.dist <= r) inf_k = std::min(inf_k, p.value);
    if (std::isfinite(inf_k)) est.shell_infima[static_cast<std::size_t>(k)] = ExtReal::finite(inf_k);
  }

  // sup over the shells; +inf shells (no admissible finite sample in the
  // ball) are genuine when the point is isolated from the sampled set.
  ExtReal sup = est.shell_infima.front();
  for (const auto& v : est.shell_infima) sup = max(sup, v);
  est.estimate = sup;

  // Smallest ball without any admissible sample at a closure point: refuse
  // to report a silent +inf, the sampling is too coarse to decide.
  const bool smallest_empty = est.shell_infima.back().is_infinite();
  if (smallest_empty && member.d != nullptr && member.d->contains_closure(u))
    est.inconclusive = true;
  (void)center_admitted;
  return est;
}

}  // namespace

EnvelopeEstimate lsc_envelope(const FunctionOracle& f, const Vec& u, const EnvelopeParams& params) {
  return envelope_impl(f, u, Membership{}, params);
}

EnvelopeEstimate lsc_envelope_in_region(const FunctionOracle& f, const Region& d, const Vec& u,
                                        const EnvelopeParams& params) {
  if (!d.contains_closure(u)) {
    EnvelopeEstimate est;
    est.point = u;
    est.estimate = ExtReal::infinity();
    est.seed = params.seed;
    return est;
  }
  return envelope_impl(f, u, Membership{&d}, params);
}

LscReport check_lsc_in_region(const FunctionOracle& f, const Region& d,
                              const SampleSet& interior_samples, double tol,
                              const EnvelopeParams& params) {
  if (interior_samples.empty()) throw SpecError("check_lsc_in_region: empty sample set");
  for (const auto& u : interior_samples.points)
    if (!d.contains(u)) throw SpecError("check_lsc_in_region: sample outside D");

  LscReport rep;
  rep.tol = tol;
  rep.tested = interior_samples.size();

  const int n = interior_samples.size();
  std::vector<std::optional<LscReport::Witness>> fails(static_cast<std::size_t>(n));
  std::vector<char> inconclusive(static_cast<std::size_t>(n), 0);
  parallel_for(n, params.threads, [&](int i) {
    const Vec& u = interior_samples.points[static_cast<std::size_t>(i)];
    EnvelopeParams ep = params;
    ep.seed = mix_seed(params.seed, "lsc" + std::to_string(i));
    const EnvelopeEstimate est = lsc_envelope_in_region(f, d, u, ep);
    if (est.inconclusive) {
      inconclusive[static_cast<std::size_t>(i)] = 1;
      return;
    }
    const ExtReal fu = f.eval(u);
    if (gap(fu, est.estimate).as_double() > tol)
      fails[static_cast<std::size_t>(i)] = LscReport::Witness{u, fu, est.estimate};
  });
  for (auto& w : fails)
    if (w) rep.failures.push_back(std::move(*w));
  for (char c : inconclusive) rep.inconclusive_points += c;
  rep.pass = rep.failures.empty() && rep.inconclusive_points == 0;
  return rep;
}

TabulatedFunction tabulate_envelope(const FunctionOracle& f, const Box& box, int res,
                                    const EnvelopeParams& params) {
  SampleSet grid = uniform_grid(box, res);
  std::vector<ExtReal> values(grid.points.size(), ExtReal::infinity());
  const int n = grid.size();
  parallel_for(n, params.threads, [&](int i) {
    EnvelopeParams ep = params;
    ep.seed = mix_seed(params.seed, "tab" + std::to_string(i));
    values[static_cast<std::size_t>(i)] =
        lsc_envelope(f, grid.points[static_cast<std::size_t>(i)], ep).estimate;
  });
  std::vector<int> res_v(static_cast<std::size_t>(box.dim()), res);
  return TabulatedFunction(box, res_v, std::move(values), "envelope(" + f.name + ")");
}

}  // namespace ruusc
