#include "ruusc/sampling.hpp"

#include <cmath>
#include <sstream>

namespace ruusc {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double result = 0.0;
  double frac = inv;
  while (index > 0) {
    result += static_cast<double>(index % base) * frac;
    index /= base;
    frac *= inv;
  }
  return result;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string box_str(const Box& box) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < box.dim(); ++i) os << (i ? "," : "") << box.lo[i] << ":" << box.hi[i];
  os << "]";
  return os.str();
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = splitmix64(seed);
  for (char c : tag) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  return h;
}

SampleSet uniform_grid(const Box& box, int res) {
  return uniform_grid(box, std::vector<int>(static_cast<std::size_t>(box.dim()), res));
}

SampleSet uniform_grid(const Box& box, const std::vector<int>& res) {
  if (!box.valid()) throw SpecError("uniform_grid: empty box");
  if (static_cast<int>(res.size()) != box.dim())
    throw SpecError("uniform_grid: resolution/box dimension mismatch");
  long total = 1;
  for (int r : res) {
    if (r < 2) throw SpecError("uniform_grid: resolution must be >= 2 per axis");
    total *= r;
  }

  SampleSet s;
  s.points.reserve(static_cast<std::size_t>(total));
  const int n = box.dim();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (long k = 0; k < total; ++k) {
    Vec p(n);
    for (int i = 0; i < n; ++i) {
      const double frac = static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                          static_cast<double>(res[static_cast<std::size_t>(i)] - 1);
      p[i] = box.lo[i] + frac * (box.hi[i] - box.lo[i]);
    }
    s.points.push_back(std::move(p));
    // odometer, last axis fastest
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < res[static_cast<std::size_t>(i)]) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  std::ostringstream os;
  os << "uniform-grid(box=" << box_str(box) << ",res=" << res[0] << ")";
  s.provenance = os.str();
  return s;
}

SampleSet low_discrepancy(const Box& box, int count, std::uint64_t seed) {
  if (!box.valid()) throw SpecError("low_discrepancy: empty box");
  if (count < 1) throw SpecError("low_discrepancy: count must be >= 1");
  const int n = box.dim();
  if (n > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
    throw SpecError("low_discrepancy: dimension too large for the Halton basis table");

  // Seed-derived start offset; index 0 (the all-zero corner point) is skipped.
  const std::uint64_t start = 1 + (splitmix64(seed) & 0xfffffULL);
  SampleSet s;
  s.points.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vec p(n);
    for (int i = 0; i < n; ++i) {
      const double h = radical_inverse(start + static_cast<std::uint64_t>(k), kPrimes[i]);
      p[i] = box.lo[i] + h * (box.hi[i] - box.lo[i]);
    }
    s.points.push_back(std::move(p));
  }
  std::ostringstream os;
  os << "low-discrepancy(box=" << box_str(box) << ",count=" << count << ",seed=" << seed << ")";
  s.provenance = os.str();
  return s;
}

SampleSet low_discrepancy_in_ball(const Vec& center, double radius, int count, std::uint64_t seed) {
  if (!(radius > 0.0)) throw SpecError("low_discrepancy_in_ball: radius must be positive");
  if (count < 1) throw SpecError("low_discrepancy_in_ball: count must be >= 1");
  const int n = static_cast<int>(center.size());
  if (n > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
    throw SpecError("low_discrepancy_in_ball: dimension too large");

  const std::uint64_t start = 1 + (splitmix64(seed) & 0xfffffULL);
  SampleSet s;
  s.points.reserve(static_cast<std::size_t>(count));
  // Rejection acceptance is ~0.52 in 3-D and better below; the cap is generous.
  const std::uint64_t cap = 64ULL * static_cast<std::uint64_t>(count) + 4096;
  for (std::uint64_t k = 0; s.size() < count && k < cap; ++k) {
    Vec p(n);
    for (int i = 0; i < n; ++i) {
      const double h = radical_inverse(start + k, kPrimes[i]);
      p[i] = center[i] + (2.0 * h - 1.0) * radius;
    }
    if ((p - center).norm() <= radius) s.points.push_back(std::move(p));
  }
  if (s.size() < count) throw Error("low_discrepancy_in_ball: rejection sampling starved");
  std::ostringstream os;
  os << "ball(r=" << radius << ",count=" << count << ",seed=" << seed << ")";
  s.provenance = os.str();
  return s;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace ruusc
