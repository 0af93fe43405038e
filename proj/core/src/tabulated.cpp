#include "ruusc/tabulated.hpp"

#include <cmath>
#include <memory>
#include <utility>

namespace ruusc {

TabulatedFunction::TabulatedFunction(Box box, std::vector<int> res, std::vector<ExtReal> values,
                                     std::string name)
    : box_(std::move(box)), res_(std::move(res)), values_(std::move(values)), name_(std::move(name)) {
  if (!box_.valid()) throw SpecError("TabulatedFunction: empty box");
  const int n = box_.dim();
  if (n < 1 || n > 2) throw SpecError("TabulatedFunction: only 1-D and 2-D grids supported");
  if (static_cast<int>(res_.size()) != n) throw SpecError("TabulatedFunction: resolution mismatch");
  long total = 1;
  for (int r : res_) {
    if (r < 2) throw SpecError("TabulatedFunction: need >= 2 nodes per axis");
    total *= r;
  }
  if (static_cast<long>(values_.size()) != total)
    throw SpecError("TabulatedFunction: value count does not match the grid");
  h_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    h_[static_cast<std::size_t>(i)] = (box_.hi[i] - box_.lo[i]) / (res_[static_cast<std::size_t>(i)] - 1);
}

Vec TabulatedFunction::node(long flat) const {
  const int n = box_.dim();
  Vec p(n);
  // last axis fastest, matching uniform_grid ordering
  for (int i = n - 1; i >= 0; --i) {
    const long r = res_[static_cast<std::size_t>(i)];
    const long idx = flat % r;
    flat /= r;
    p[i] = box_.lo[i] + static_cast<double>(idx) * h_[static_cast<std::size_t>(i)];
  }
  return p;
}

SampleSet TabulatedFunction::nodes() const {
  SampleSet s;
  s.points.reserve(static_cast<std::size_t>(node_count()));
  for (long k = 0; k < node_count(); ++k) s.points.push_back(node(k));
  s.provenance = "tabulated-nodes(" + name_ + ")";
  return s;
}

TabulatedFunction::Value TabulatedFunction::at(const Vec& x) const {
  const int n = box_.dim();
  if (static_cast<int>(x.size()) != n) throw SpecError("TabulatedFunction: dimension mismatch");
  if (!box_.contains(x, 1e-12)) return {ExtReal::infinity(), false};

  // Locate the cell and the barycentric offsets.
  long base_idx[2] = {0, 0};
  double frac[2] = {0.0, 0.0};
  bool on_node = true;
  for (int i = 0; i < n; ++i) {
    const double s = (x[i] - box_.lo[i]) / h_[static_cast<std::size_t>(i)];
    long cell = static_cast<long>(std::floor(s));
    const long max_cell = res_[static_cast<std::size_t>(i)] - 2;
    if (cell < 0) cell = 0;
    if (cell > max_cell) cell = max_cell;
    double f = s - static_cast<double>(cell);
    if (f < 0.0) f = 0.0;
    if (f > 1.0) f = 1.0;
    // Snap to exact nodes within one ulp-scale tolerance of the spacing.
    const double snap = 1e-12;
    if (f < snap) f = 0.0;
    else if (f > 1.0 - snap) f = 1.0;
    if (f != 0.0 && f != 1.0) on_node = false;
    base_idx[i] = cell;
    frac[i] = f;
  }

  auto value_at = [&](long i0, long i1) -> const ExtReal& {
    long flat = i0;
    if (n == 2) flat = i0 * res_[1] + i1;
    return values_[static_cast<std::size_t>(flat)];
  };

  if (n == 1) {
    const ExtReal& a = value_at(base_idx[0], 0);
    const ExtReal& b = value_at(base_idx[0] + 1, 0);
    if (frac[0] == 0.0) return {a, false};
    if (frac[0] == 1.0) return {b, false};
    if (a.is_infinite() || b.is_infinite()) return {ExtReal::infinity(), true};
    return {ExtReal::finite((1.0 - frac[0]) * a.value() + frac[0] * b.value()), true};
  }

  const long i = base_idx[0], j = base_idx[1];
  const ExtReal* corners[4] = {&value_at(i, j), &value_at(i, j + 1), &value_at(i + 1, j),
                               &value_at(i + 1, j + 1)};
  if (on_node) {
    const long ii = frac[0] == 1.0 ? 1 : 0;
    const long jj = frac[1] == 1.0 ? 1 : 0;
    return {*corners[2 * ii + jj], false};
  }
  for (const ExtReal* c : corners)
    if (c->is_infinite()) return {ExtReal::infinity(), true};
  const double fx = frac[0], fy = frac[1];
  const double v = (1 - fx) * (1 - fy) * corners[0]->value() + (1 - fx) * fy * corners[1]->value() +
                   fx * (1 - fy) * corners[2]->value() + fx * fy * corners[3]->value();
  return {ExtReal::finite(v), true};
}

FunctionOracle TabulatedFunction::as_oracle(FunctionOracle::Traits traits) const {
  auto self = std::make_shared<TabulatedFunction>(*this);
  FunctionOracle f = make_oracle(name_, dim(), [self](const Vec& x) { return self->at(x).v; }, traits);
  f.dom_fn = [self](const Vec& x) { return self->at(x).v.is_finite(); };
  return f;
}

}  // namespace ruusc
