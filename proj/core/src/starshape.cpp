#include "ruusc/starshape.hpp"

#include "ruusc/parallel.hpp"

#include <cmath>
#include <memory>
#include <mutex>

namespace ruusc {

std::vector<double> geometric_t_schedule(int k_begin, int k_end) {
  if (k_begin < 1 || k_end < k_begin) throw SpecError("geometric_t_schedule: bad range");
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(k_end - k_begin + 1));
  for (int k = k_begin; k <= k_end; ++k) t.push_back(1.0 - std::ldexp(1.0, -k));
  return t;
}

StarShapeReport check_strong_star_shape(const Region& d, const std::vector<double>& t_schedule,
                                        const SampleSet& closure_samples, int threads) {
  if (closure_samples.empty()) throw SpecError("check_strong_star_shape: empty sample set");
  if (t_schedule.empty()) throw SpecError("check_strong_star_shape: empty t schedule");
  for (double t : t_schedule)
    if (!(t >= 0.0 && t < 1.0)) throw SpecError("check_strong_star_shape: t must lie in [0,1[");
  for (const auto& u : closure_samples.points)
    if (!d.contains_closure(u))
      throw SpecError("check_strong_star_shape: sample outside the closure");

  StarShapeReport rep;
  rep.t_schedule = t_schedule;
  rep.tested_points = closure_samples.size();

  const int nt = static_cast<int>(t_schedule.size());
  const int nu = closure_samples.size();
  std::vector<std::vector<StarShapeReport::Violation>> found(static_cast<std::size_t>(nt));
  parallel_for(nt, threads, [&](int it) {
    const double t = t_schedule[static_cast<std::size_t>(it)];
    for (int iu = 0; iu < nu; ++iu) {
      const Vec& u = closure_samples.points[static_cast<std::size_t>(iu)];
      Vec mapped = radial_point(d.center, u, t);
      if (!d.contains(mapped))
        found[static_cast<std::size_t>(it)].push_back({t, u, std::move(mapped)});
    }
  });
  for (auto& per_t : found)
    for (auto& v : per_t) rep.violations.push_back(std::move(v));
  rep.pass = rep.violations.empty();
  return rep;
}

FunctionOracle indicator(const Region& d) {
  auto pd = std::make_shared<Region>(d);
  FunctionOracle::Traits t;
  t.convex = d.declared_convex;
  t.lower_bound = 0.0;
  t.sup_abs_on_dom = 0.0;
  FunctionOracle f = make_oracle("chi(" + d.name + ")", d.dim,
                                 [pd](const Vec& x) {
                                   return pd->contains(x) ? ExtReal::finite(0.0) : ExtReal::infinity();
                                 },
                                 t);
  f.dom_fn = [pd](const Vec& x) { return pd->contains(x); };
  return f;
}

}  // namespace ruusc
