#include "ruusc/catalog.hpp"

#include "ruusc/starshape.hpp"

#include <cmath>
#include <cstring>
#include <memory>

namespace ruusc {

FunctionOracle norm_power(int dim, double p) {
  if (!(p > 0.0)) throw SpecError("norm_power: p must be positive");
  FunctionOracle::Traits t;
  t.convex = p >= 1.0;
  t.continuous = true;
  t.lower_bound = 0.0;
  return make_oracle("norm^" + std::to_string(p), dim,
                     [p](const Vec& x) { return ExtReal::finite(std::pow(x.norm(), p)); }, t);
}

FunctionOracle affine(const Vec& a, double b) {
  FunctionOracle::Traits t;
  t.convex = true;
  t.continuous = true;
  return make_oracle("affine", static_cast<int>(a.size()),
                     [a, b](const Vec& x) { return ExtReal::finite(a.dot(x) + b); }, t);
}

FunctionOracle constant_fn(int dim, double c) {
  FunctionOracle::Traits t;
  t.convex = true;
  t.continuous = true;
  t.lower_bound = c;
  t.sup_abs_on_dom = std::abs(c);
  return make_oracle("const", dim, [c](const Vec&) { return ExtReal::finite(c); }, t);
}

FunctionOracle convex_quadratic(int dim, double scale, const Vec& shift, double offset) {
  if (!(scale > 0.0)) throw SpecError("convex_quadratic: scale must be positive");
  FunctionOracle::Traits t;
  t.convex = true;
  t.continuous = true;
  t.lower_bound = offset;
  return make_oracle("quadratic", dim,
                     [scale, shift, offset](const Vec& x) {
                       return ExtReal::finite(scale * (x - shift).squaredNorm() + offset);
                     },
                     t);
}

FunctionOracle nonconvex_poly2d() {
  FunctionOracle::Traits t;
  t.continuous = true;
  t.lower_bound = 0.0;  // 2x + y^3 = 0 critical curve gives y^2 - y^6/4 >= 0 near the origin
  return make_oracle("poly-xy3", 2,
                     [](const Vec& x) {
                       return ExtReal::finite(x[0] * x[0] + x[1] * x[1] + x[0] * x[1] * x[1] * x[1]);
                     },
                     t);
}

FunctionOracle inverse_barrier(int dim) {
  FunctionOracle::Traits t;
  t.convex = true;
  t.lower_bound = 1.0;
  FunctionOracle f = make_oracle("inverse-barrier", dim, [](const Vec& x) {
    const double r = x.norm();
    if (r >= 1.0) return ExtReal::infinity();
    return ExtReal::finite(1.0 / (1.0 - r));
  }, t);
  f.dom_fn = [](const Vec& x) { return x.norm() < 1.0; };
  return f;
}

FunctionOracle radial_oscillator(int dim) {
  FunctionOracle::Traits t;
  t.ru_usc = false;
  return make_oracle("radial-oscillator", dim, [](const Vec& x) {
    const double r = x.norm();
    if (r >= 1.0) return ExtReal::finite(0.0);
    return ExtReal::finite(std::sin(1.0 / (1.0 - r)));
  }, t);
}

FunctionOracle spike(const Vec& x0, double height, double base) {
  return make_oracle("spike", static_cast<int>(x0.size()), [x0, height, base](const Vec& x) {
    if (x.size() == x0.size() &&
        std::memcmp(x.data(), x0.data(), sizeof(double) * static_cast<std::size_t>(x.size())) == 0)
      return ExtReal::finite(height);
    return ExtReal::finite(base);
  });
}

FunctionOracle step_down_1d() {
  FunctionOracle::Traits t;
  t.lower_bound = 0.0;
  t.sup_abs_on_dom = 1.0;
  return make_oracle("step-down", 1, [](const Vec& x) {
    return ExtReal::finite(x[0] <= 0.0 ? 1.0 : 0.0);
  }, t);
}

FunctionOracle neg_norm(int dim) {
  FunctionOracle::Traits t;
  t.continuous = true;
  return make_oracle("neg-norm", dim,
                     [](const Vec& x) { return ExtReal::finite(-x.norm()); }, t);
}

FunctionOracle product_wells_1d() {
  FunctionOracle::Traits t;
  t.continuous = true;
  t.lower_bound = 1.0;
  return make_oracle("product-wells", 1, [](const Vec& x) {
    const double a = 1.0 + x[0] * x[0];
    const double b = 1.0 + (x[0] - 3.0) * (x[0] - 3.0);
    return ExtReal::finite(a * b);
  }, t);
}

FunctionOracle sum(const FunctionOracle& f, const FunctionOracle& g) {
  if (f.dim != g.dim) throw SpecError("sum: dimension mismatch");
  auto pf = std::make_shared<FunctionOracle>(f);
  auto pg = std::make_shared<FunctionOracle>(g);
  FunctionOracle::Traits t;
  t.convex = f.traits.convex && g.traits.convex;
  t.continuous = f.traits.continuous && g.traits.continuous;
  if (f.traits.lower_bound && g.traits.lower_bound)
    t.lower_bound = *f.traits.lower_bound + *g.traits.lower_bound;
  FunctionOracle h = make_oracle(f.name + "+" + g.name, f.dim,
                                 [pf, pg](const Vec& x) { return pf->eval(x) + pg->eval(x); }, t);
  h.dom_fn = [pf, pg](const Vec& x) { return pf->dom_contains(x) && pg->dom_contains(x); };
  return h;
}

FunctionOracle pointwise_product(const FunctionOracle& f, const FunctionOracle& g) {
  if (f.dim != g.dim) throw SpecError("pointwise_product: dimension mismatch");
  auto pf = std::make_shared<FunctionOracle>(f);
  auto pg = std::make_shared<FunctionOracle>(g);
  FunctionOracle h = make_oracle(f.name + "*" + g.name, f.dim, [pf, pg](const Vec& x) {
    const ExtReal a = pf->eval(x);
    const ExtReal b = pg->eval(x);
    // Products are used under positivity hypotheses; inf absorbs.
    if (a.is_infinite() || b.is_infinite()) return ExtReal::infinity();
    return ExtReal::finite(a.value() * b.value());
  });
  h.dom_fn = [pf, pg](const Vec& x) { return pf->dom_contains(x) && pg->dom_contains(x); };
  return h;
}

FunctionOracle scaled(const FunctionOracle& f, double lambda) {
  if (lambda < 0.0) throw HypothesisRefused("scaled: lambda must be nonnegative");
  auto pf = std::make_shared<FunctionOracle>(f);
  FunctionOracle::Traits t = f.traits;
  if (t.lower_bound) t.lower_bound = lambda * *t.lower_bound;
  if (t.sup_abs_on_dom) t.sup_abs_on_dom = lambda * *t.sup_abs_on_dom;
  t.ru_usc.reset();
  FunctionOracle h = make_oracle(std::to_string(lambda) + "*" + f.name, f.dim,
                                 [pf, lambda](const Vec& x) {
                                   if (lambda == 0.0) return ExtReal::finite(0.0);
                                   return lambda * pf->eval(x);
                                 },
                                 t);
  if (lambda > 0.0) h.dom_fn = [pf](const Vec& x) { return pf->dom_contains(x); };
  return h;
}

FunctionOracle shifted(const FunctionOracle& f, double c) {
  auto pf = std::make_shared<FunctionOracle>(f);
  FunctionOracle::Traits t = f.traits;
  if (t.lower_bound) t.lower_bound = *t.lower_bound + c;
  t.sup_abs_on_dom.reset();
  t.ru_usc.reset();
  FunctionOracle h = make_oracle(f.name + (c >= 0 ? "+" : "") + std::to_string(c), f.dim,
                                 [pf, c](const Vec& x) { return pf->eval(x) + c; }, t);
  h.dom_fn = [pf](const Vec& x) { return pf->dom_contains(x); };
  return h;
}

FunctionOracle restricted(const FunctionOracle& f, const Region& d) {
  return sum(f, indicator(d));
}

// ---------------------------------------------------------------------------

namespace {

Vec params_tail(const std::vector<double>& p, std::size_t from, std::size_t n) {
  if (p.size() < from + n) throw SpecError("catalog: not enough parameters");
  Vec v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = p[from + i];
  return v;
}

double param(const std::vector<double>& p, std::size_t i) {
  if (i >= p.size()) throw SpecError("catalog: not enough parameters");
  return p[i];
}

}  // namespace

FunctionOracle make_catalog_function(const std::string& name, const std::vector<double>& params) {
  if (name == "norm_power")  // [dim, p]
    return norm_power(static_cast<int>(param(params, 0)), param(params, 1));
  if (name == "affine") {  // [dim, a..., b]
    const int dim = static_cast<int>(param(params, 0));
    return affine(params_tail(params, 1, static_cast<std::size_t>(dim)),
                  param(params, 1 + static_cast<std::size_t>(dim)));
  }
  if (name == "const")  // [dim, c]
    return constant_fn(static_cast<int>(param(params, 0)), param(params, 1));
  if (name == "quadratic") {  // [dim, scale, shift..., offset]
    const int dim = static_cast<int>(param(params, 0));
    return convex_quadratic(dim, param(params, 1), params_tail(params, 2, static_cast<std::size_t>(dim)),
                            param(params, 2 + static_cast<std::size_t>(dim)));
  }
  if (name == "nonconvex_poly2d") return nonconvex_poly2d();
  if (name == "inverse_barrier") return inverse_barrier(static_cast<int>(param(params, 0)));
  if (name == "radial_oscillator") return radial_oscillator(static_cast<int>(param(params, 0)));
  if (name == "step_down") return step_down_1d();
  if (name == "neg_norm") return neg_norm(static_cast<int>(param(params, 0)));
  if (name == "product_wells") return product_wells_1d();
  if (name == "indicator") return indicator(make_catalog_region("__from_params", params));
  throw SpecError("unknown catalog function '" + name + "'");
}

Region make_catalog_region(const std::string& name, const std::vector<double>& params) {
  auto box_from = [&params](std::size_t at, int dim) {
    Box b;
    b.lo = params_tail(params, at, static_cast<std::size_t>(dim));
    b.hi = params_tail(params, at + static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    return b;
  };
  if (name == "box" || name == "open_box" || name == "__from_params") {
    // [dim, lo..., hi..., center...]
    const int dim = static_cast<int>(param(params, 0));
    Box b = box_from(1, dim);
    const Vec c = params_tail(params, 1 + 2 * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    return name == "open_box" ? box_region_open(b, c) : box_region_closed(b, c);
  }
  if (name == "ball" || name == "open_ball") {
    // [dim, center..., radius]
    const int dim = static_cast<int>(param(params, 0));
    const Vec c = params_tail(params, 1, static_cast<std::size_t>(dim));
    const double radius = param(params, 1 + static_cast<std::size_t>(dim));
    return ball_region(c, radius, name == "open_ball", c);
  }
  if (name == "shell") {
    // [dim, center..., r_in, r_out]
    const int dim = static_cast<int>(param(params, 0));
    const Vec c = params_tail(params, 1, static_cast<std::size_t>(dim));
    const double r_in = param(params, 1 + static_cast<std::size_t>(dim));
    const double r_out = param(params, 2 + static_cast<std::size_t>(dim));
    Vec u0 = c;
    u0[0] += r_out;  // a point of the shell itself
    return shell_region(c, r_in, r_out, u0);
  }
  if (name == "union_two_boxes") {
    // [dim, lo1..., hi1..., lo2..., hi2..., u0...]
    const int dim = static_cast<int>(param(params, 0));
    const auto d = static_cast<std::size_t>(dim);
    Box b1 = box_from(1, dim);
    Box b2 = box_from(1 + 2 * d, dim);
    const Vec u0 = params_tail(params, 1 + 4 * d, d);
    return union_of_convex(box_region_closed(b1, u0), box_region_closed(b2, u0), u0);
  }
  throw SpecError("unknown catalog region '" + name + "'");
}

std::vector<CatalogProbe> catalog_probes() {
  return {
      {"norm_power", {2, 2}, make_box({-2, -2}, {2, 2})},
      {"norm_power", {1, 1}, make_box({-2}, {2})},
      {"affine", {2, 1, -0.5, 0.25}, make_box({-2, -2}, {2, 2})},
      {"const", {2, 3}, make_box({-1, -1}, {1, 1})},
      {"quadratic", {2, 2, 0.5, -0.5, 1}, make_box({-2, -2}, {2, 2})},
      {"nonconvex_poly2d", {}, make_box({-1.5, -1.5}, {1.5, 1.5})},
      {"inverse_barrier", {2}, make_box({-2, -2}, {2, 2})},
      {"radial_oscillator", {2}, make_box({-2, -2}, {2, 2})},
      {"step_down", {}, make_box({-1}, {1})},
      {"neg_norm", {2}, make_box({-2, -2}, {2, 2})},
      {"product_wells", {}, make_box({-1}, {4})},
  };
}

}  // namespace ruusc
