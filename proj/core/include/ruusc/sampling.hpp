#pragma once

#include "ruusc/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ruusc {

/// Finite ordered list of points with a provenance tag. Same provenance
/// parameters always produce the identical list.
struct SampleSet {
  std::vector<Vec> points;
  std::string provenance;

  int size() const { return static_cast<int>(points.size()); }
  bool empty() const { return points.empty(); }
};

/// Tensor grid over the box, `res` points per axis (res >= 2 includes both
/// endpoints). Points are ordered lexicographically, last axis fastest.
SampleSet uniform_grid(const Box& box, int res);

/// Per-axis resolutions.
SampleSet uniform_grid(const Box& box, const std::vector<int>& res);

/// Halton sequence (prime bases 2,3,5,...) mapped into the box. The seed
/// selects a deterministic start offset into the sequence, so a larger count
/// with the same seed extends the list (prefix property).
SampleSet low_discrepancy(const Box& box, int count, std::uint64_t seed);

/// First `count` Halton points falling inside the ball, taken from the
/// enclosing box by rejection. Deterministic; prefix property as above.
SampleSet low_discrepancy_in_ball(const Vec& center, double radius, int count, std::uint64_t seed);

/// Deterministic sub-seed derivation, stable across platforms.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag);

/// mt19937_64 wrapper producing bit-stable canonical doubles (the standard
/// distributions are implementation-defined; these are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller on canonical uniforms.
  double normal();

  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ruusc
