#pragma once

#include "ruusc/sampling.hpp"
#include "ruusc/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ruusc {

/// A subset D of R^n given by membership predicates, analytic boundary and
/// inside samplers, and a distinguished center point u0 (the base point of
/// all radial segments). Immutable after construction.
///
/// Exact boundary membership is not decidable in floating point, so closure
/// membership carries an absolute tolerance `closure_tol`.
struct Region {
  int dim = 0;
  Vec center;  // u0; always satisfies contains()
  bool declared_convex = false;
  double closure_tol = 1e-9;
  std::string name;

  std::function<bool(const Vec&)> contains_fn;
  std::function<bool(const Vec&)> closure_fn;
  std::function<bool(const Vec&)> interior_fn;
  std::function<SampleSet(int count, std::uint64_t seed)> boundary_sampler;
  std::function<SampleSet(int count, std::uint64_t seed)> inside_sampler;
  Box bounding_box;  // encloses the closure

  bool contains(const Vec& x) const { return contains_fn(x); }
  bool contains_closure(const Vec& x) const { return closure_fn(x); }
  bool contains_interior(const Vec& x) const { return interior_fn(x); }

  /// Points on the topological boundary of the closure.
  SampleSet sample_boundary(int count, std::uint64_t seed) const {
    return boundary_sampler(count, seed);
  }

  /// Points satisfying contains().
  SampleSet sample_inside(int count, std::uint64_t seed) const {
    return inside_sampler(count, seed);
  }
};

/// Box region; `lo_open[i]` / `hi_open[i]` make the respective face strict.
/// Covers closed, open and half-open boxes such as [0,1[ x [0,1[.
Region box_region(const Box& box, const Vec& center,
                  const std::vector<bool>& lo_open = {},
                  const std::vector<bool>& hi_open = {});

Region box_region_closed(const Box& box, const Vec& center);
Region box_region_open(const Box& box, const Vec& center);

/// Euclidean ball, open or closed.
Region ball_region(const Vec& center_pt, double radius, bool open, const Vec& u0);

/// {x : r_in <= |x - c| <= r_out}; with r_in == r_out this is the sphere,
/// a closed set with empty interior. Membership is padded by closure_tol.
Region shell_region(const Vec& center_pt, double r_in, double r_out, const Vec& u0);

/// Intersection of half-spaces a_i . x <= b_i, clipped for sampling by a
/// bounding box that must enclose it.
Region halfspace_intersection_region(const std::vector<Vec>& normals,
                                     const std::vector<double>& offsets,
                                     const Box& bounding, const Vec& u0);

/// Union of two convex regions with u0 strictly interior to both, checked by
/// small-ball sampling. Nonconvex in general but strongly star-shaped
/// relative to u0.
Region union_of_convex(const Region& d1, const Region& d2, const Vec& u0);

/// Same point set as the closure of `d`: contains == contains_closure.
Region closure_region(const Region& d);

}  // namespace ruusc
