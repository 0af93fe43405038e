#include "ruusc/region.hpp"

#include <cmath>
#include <memory>

namespace ruusc {

namespace {

void check_center(const Region& r) {
  if (!r.contains(r.center))
    throw SpecError("region '" + r.name + "': center is not a member");
}

Box inflate(const Box& b, double pad) {
  Box out = b;
  for (int i = 0; i < b.dim(); ++i) {
    out.lo[i] -= pad;
    out.hi[i] += pad;
  }
  return out;
}

}  // namespace

Region box_region(const Box& box, const Vec& center,
                  const std::vector<bool>& lo_open, const std::vector<bool>& hi_open) {
  if (!box.valid()) throw SpecError("box_region: empty box");
  const int n = box.dim();
  auto lo_o = lo_open.empty() ? std::vector<bool>(static_cast<std::size_t>(n), false) : lo_open;
  auto hi_o = hi_open.empty() ? std::vector<bool>(static_cast<std::size_t>(n), false) : hi_open;
  if (static_cast<int>(lo_o.size()) != n || static_cast<int>(hi_o.size()) != n)
    throw SpecError("box_region: openness flags/dimension mismatch");

  Region r;
  r.dim = n;
  r.center = center;
  r.declared_convex = true;
  r.name = "box";
  r.bounding_box = box;
  const double tol = r.closure_tol;

  r.contains_fn = [box, lo_o, hi_o, n](const Vec& x) {
    for (int i = 0; i < n; ++i) {
      if (lo_o[static_cast<std::size_t>(i)] ? !(x[i] > box.lo[i]) : !(x[i] >= box.lo[i])) return false;
      if (hi_o[static_cast<std::size_t>(i)] ? !(x[i] < box.hi[i]) : !(x[i] <= box.hi[i])) return false;
    }
    return true;
  };
  r.closure_fn = [box, tol](const Vec& x) { return box.contains(x, tol); };
  r.interior_fn = [box, n](const Vec& x) {
    for (int i = 0; i < n; ++i)
      if (!(x[i] > box.lo[i] && x[i] < box.hi[i])) return false;
    return true;
  };
  r.boundary_sampler = [box, n](int count, std::uint64_t seed) {
    // Round-robin over the 2n faces; each face sample is a Halton point of
    // the box with one coordinate pinned.
    SampleSet all = low_discrepancy(box, count, mix_seed(seed, "box-boundary"));
    for (int k = 0; k < count; ++k) {
      const int face = k % (2 * n);
      const int axis = face / 2;
      all.points[static_cast<std::size_t>(k)][axis] = (face % 2 == 0) ? box.lo[axis] : box.hi[axis];
    }
    all.provenance = "box-boundary(count=" + std::to_string(count) + ",seed=" + std::to_string(seed) + ")";
    return all;
  };
  r.inside_sampler = [box](int count, std::uint64_t seed) {
    return low_discrepancy(box, count, mix_seed(seed, "box-inside"));
  };
  // Halton points are interior to the box; for open faces they still satisfy
  // contains() since the sequence never returns an exact endpoint (index 0 is
  // skipped); membership is checked when sampling anyway for safety.
  check_center(r);
  return r;
}

Region box_region_closed(const Box& box, const Vec& center) {
  return box_region(box, center, {}, {});
}

Region box_region_open(const Box& box, const Vec& center) {
  const auto n = static_cast<std::size_t>(box.dim());
  Region r = box_region(box, center, std::vector<bool>(n, true), std::vector<bool>(n, true));
  r.name = "open-box";
  return r;
}

Region ball_region(const Vec& center_pt, double radius, bool open, const Vec& u0) {
  if (!(radius > 0.0)) throw SpecError("ball_region: radius must be positive");
  const int n = static_cast<int>(center_pt.size());

  Region r;
  r.dim = n;
  r.center = u0;
  r.declared_convex = true;
  r.name = open ? "open-ball" : "ball";
  Box bb;
  bb.lo = center_pt.array() - radius;
  bb.hi = center_pt.array() + radius;
  r.bounding_box = bb;
  const double tol = r.closure_tol;

  r.contains_fn = [center_pt, radius, open](const Vec& x) {
    const double d = (x - center_pt).norm();
    return open ? d < radius : d <= radius;
  };
  r.closure_fn = [center_pt, radius, tol](const Vec& x) {
    return (x - center_pt).norm() <= radius + tol;
  };
  r.interior_fn = [center_pt, radius](const Vec& x) { return (x - center_pt).norm() < radius; };
  r.boundary_sampler = [center_pt, radius, n](int count, std::uint64_t seed) {
    SampleSet s;
    s.points.reserve(static_cast<std::size_t>(count));
    if (n == 1) {
      for (int k = 0; k < count; ++k)
        s.points.push_back(vec1(center_pt[0] + ((k % 2 == 0) ? radius : -radius)));
    } else {
      Rng rng(mix_seed(seed, "sphere"));
      for (int k = 0; k < count; ++k) {
        Vec dir(n);
        double nrm = 0.0;
        do {
          for (int i = 0; i < n; ++i) dir[i] = rng.normal();
          nrm = dir.norm();
        } while (nrm < 1e-12);
        s.points.push_back(center_pt + (radius / nrm) * dir);
      }
    }
    s.provenance = "sphere(count=" + std::to_string(count) + ",seed=" + std::to_string(seed) + ")";
    return s;
  };
  r.inside_sampler = [center_pt, radius](int count, std::uint64_t seed) {
    // Interior points only, so the sampler serves open and closed balls alike.
    return low_discrepancy_in_ball(center_pt, radius * (1.0 - 1e-12), count,
                                   mix_seed(seed, "ball-inside"));
  };
  check_center(r);
  return r;
}

Region shell_region(const Vec& center_pt, double r_in, double r_out, const Vec& u0) {
  if (!(r_in >= 0.0 && r_out >= r_in && r_out > 0.0))
    throw SpecError("shell_region: need 0 <= r_in <= r_out, r_out > 0");
  const int n = static_cast<int>(center_pt.size());

  Region r;
  r.dim = n;
  r.center = u0;
  r.declared_convex = false;
  r.name = "shell";
  Box bb;
  bb.lo = center_pt.array() - r_out;
  bb.hi = center_pt.array() + r_out;
  r.bounding_box = bb;
  const double tol = r.closure_tol;

  r.contains_fn = [center_pt, r_in, r_out, tol](const Vec& x) {
    const double d = (x - center_pt).norm();
    return d >= r_in - tol && d <= r_out + tol;
  };
  r.closure_fn = r.contains_fn;
  r.interior_fn = [center_pt, r_in, r_out](const Vec& x) {
    const double d = (x - center_pt).norm();
    return d > r_in && d < r_out;
  };
  r.boundary_sampler = [center_pt, r_in, r_out, n](int count, std::uint64_t seed) {
    SampleSet s;
    s.points.reserve(static_cast<std::size_t>(count));
    Rng rng(mix_seed(seed, "shell-boundary"));
    for (int k = 0; k < count; ++k) {
      const double rad = (k % 2 == 0) ? r_out : r_in;
      if (n == 1) {
        s.points.push_back(vec1(center_pt[0] + ((k / 2) % 2 == 0 ? rad : -rad)));
        continue;
      }
      Vec dir(n);
      double nrm = 0.0;
      do {
        for (int i = 0; i < n; ++i) dir[i] = rng.normal();
        nrm = dir.norm();
      } while (nrm < 1e-12);
      s.points.push_back(center_pt + (rad / nrm) * dir);
    }
    s.provenance = "shell-boundary(count=" + std::to_string(count) + ")";
    return s;
  };
  auto boundary = r.boundary_sampler;
  r.inside_sampler = [center_pt, r_in, r_out, n, boundary](int count, std::uint64_t seed) {
    if (r_out - r_in < 1e-12) return boundary(count, seed);  // degenerate sphere
    SampleSet raw = low_discrepancy_in_ball(center_pt, r_out, 16 * count + 64,
                                            mix_seed(seed, "shell-inside"));
    SampleSet s;
    for (auto& p : raw.points) {
      const double d = (p - center_pt).norm();
      if (d >= r_in && d <= r_out) s.points.push_back(std::move(p));
      if (s.size() == count) break;
    }
    if (s.size() < count) throw Error("shell_region: inside sampling starved");
    s.provenance = "shell-inside(count=" + std::to_string(count) + ")";
    return s;
  };
  check_center(r);
  return r;
}

Region halfspace_intersection_region(const std::vector<Vec>& normals,
                                     const std::vector<double>& offsets,
                                     const Box& bounding, const Vec& u0) {
  if (normals.empty() || normals.size() != offsets.size())
    throw SpecError("halfspace_intersection_region: need matching normals/offsets");
  const int n = bounding.dim();

  Region r;
  r.dim = n;
  r.center = u0;
  r.declared_convex = true;
  r.name = "halfspace-intersection";
  r.bounding_box = bounding;
  const double tol = r.closure_tol;

  auto satisfies = [normals, offsets](const Vec& x, double pad) {
    for (std::size_t i = 0; i < normals.size(); ++i)
      if (normals[i].dot(x) > offsets[i] + pad) return false;
    return true;
  };
  r.contains_fn = [satisfies, bounding](const Vec& x) {
    return bounding.contains(x) && satisfies(x, 0.0);
  };
  r.closure_fn = [satisfies, bounding, tol](const Vec& x) {
    return bounding.contains(x, tol) && satisfies(x, tol);
  };
  r.interior_fn = [normals, offsets, bounding](const Vec& x) {
    if (!bounding.contains(x, -1e-15)) return false;
    for (std::size_t i = 0; i < normals.size(); ++i)
      if (!(normals[i].dot(x) < offsets[i])) return false;
    return true;
  };
  r.boundary_sampler = [normals, offsets, bounding, satisfies](int count, std::uint64_t seed) {
    // Project box samples onto each hyperplane in turn; keep those feasible
    // for every other constraint.
    SampleSet s;
    const int m = static_cast<int>(normals.size());
    std::uint64_t sub = 0;
    while (s.size() < count && sub < 64) {
      SampleSet raw = low_discrepancy(bounding, 4 * count + 64, mix_seed(seed, "hs" + std::to_string(sub)));
      for (auto& p : raw.points) {
        const int i = s.size() % m;
        const Vec& a = normals[static_cast<std::size_t>(i)];
        const double nn = a.squaredNorm();
        if (nn < 1e-30) continue;
        Vec proj = p + ((offsets[static_cast<std::size_t>(i)] - a.dot(p)) / nn) * a;
        if (satisfies(proj, 1e-12) && bounding.contains(proj, 1e-12)) s.points.push_back(std::move(proj));
        if (s.size() == count) break;
      }
      ++sub;
    }
    if (s.size() < count) throw Error("halfspace boundary sampling starved");
    s.provenance = "halfspace-boundary(count=" + std::to_string(count) + ")";
    return s;
  };
  auto contains = r.contains_fn;
  r.inside_sampler = [contains, bounding](int count, std::uint64_t seed) {
    SampleSet s;
    std::uint64_t sub = 0;
    while (s.size() < count && sub < 64) {
      SampleSet raw = low_discrepancy(bounding, 4 * count + 64, mix_seed(seed, "hsin" + std::to_string(sub)));
      for (auto& p : raw.points) {
        if (contains(p)) s.points.push_back(std::move(p));
        if (s.size() == count) break;
      }
      ++sub;
    }
    if (s.size() < count) throw Error("halfspace inside sampling starved");
    s.provenance = "halfspace-inside(count=" + std::to_string(count) + ")";
    return s;
  };
  check_center(r);
  return r;
}

Region union_of_convex(const Region& d1, const Region& d2, const Vec& u0) {
  if (d1.dim != d2.dim) throw SpecError("union_of_convex: dimension mismatch");
  if (!d1.declared_convex || !d2.declared_convex)
    throw SpecError("union_of_convex: both parts must be declared convex");

  // u0 must be strictly interior to the intersection; verified on a small
  // ball around u0.
  const double scale = std::max(d1.bounding_box.extent(), d2.bounding_box.extent());
  const double r0 = std::max(1e-9, 1e-6 * scale);
  SampleSet probe = low_discrepancy_in_ball(u0, r0, 64, mix_seed(11, "u0-probe"));
  for (const auto& p : probe.points) {
    if (!d1.contains(p) || !d2.contains(p))
      throw HypothesisRefused(
          "union_of_convex: u0 is not interior to the intersection of the parts");
  }

  auto p1 = std::make_shared<Region>(d1);
  auto p2 = std::make_shared<Region>(d2);

  Region r;
  r.dim = d1.dim;
  r.center = u0;
  r.declared_convex = false;
  r.name = "union(" + d1.name + "," + d2.name + ")";
  Box bb;
  bb.lo = d1.bounding_box.lo.cwiseMin(d2.bounding_box.lo);
  bb.hi = d1.bounding_box.hi.cwiseMax(d2.bounding_box.hi);
  r.bounding_box = bb;

  r.contains_fn = [p1, p2](const Vec& x) { return p1->contains(x) || p2->contains(x); };
  r.closure_fn = [p1, p2](const Vec& x) {
    return p1->contains_closure(x) || p2->contains_closure(x);
  };
  r.interior_fn = [p1, p2](const Vec& x) {
    return p1->contains_interior(x) || p2->contains_interior(x);
  };
  r.boundary_sampler = [p1, p2](int count, std::uint64_t seed) {
    // A boundary point of one part stays on the union boundary unless the
    // other part swallows it into its interior.
    SampleSet s;
    std::uint64_t sub = 0;
    while (s.size() < count && sub < 64) {
      SampleSet b1 = p1->sample_boundary(2 * count + 32, mix_seed(seed, "u1-" + std::to_string(sub)));
      SampleSet b2 = p2->sample_boundary(2 * count + 32, mix_seed(seed, "u2-" + std::to_string(sub)));
      for (int k = 0; k < b1.size() + b2.size() && s.size() < count; ++k) {
        const bool from_first = (k % 2 == 0);
        const int idx = k / 2;
        const SampleSet& src = from_first ? b1 : b2;
        const Region& other = from_first ? *p2 : *p1;
        if (idx >= src.size()) continue;
        const Vec& p = src.points[static_cast<std::size_t>(idx)];
        if (!other.contains_interior(p)) s.points.push_back(p);
      }
      ++sub;
    }
    if (s.size() < count) throw Error("union boundary sampling starved");
    s.provenance = "union-boundary(count=" + std::to_string(count) + ")";
    return s;
  };
  r.inside_sampler = [p1, p2](int count, std::uint64_t seed) {
    SampleSet a = p1->sample_inside((count + 1) / 2, mix_seed(seed, "uin1"));
    SampleSet b = p2->sample_inside((count + 1) / 2, mix_seed(seed, "uin2"));
    SampleSet s;
    s.points.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      const SampleSet& src = (k % 2 == 0) ? a : b;
      s.points.push_back(src.points[static_cast<std::size_t>(k / 2)]);
    }
    s.provenance = "union-inside(count=" + std::to_string(count) + ")";
    return s;
  };
  check_center(r);
  return r;
}

Region closure_region(const Region& d) {
  auto base = std::make_shared<Region>(d);
  Region r = d;
  r.name = d.name + "-closure";
  r.contains_fn = [base](const Vec& x) { return base->contains_closure(x); };
  r.closure_fn = r.contains_fn;
  auto boundary = d.boundary_sampler;
  auto inside = d.inside_sampler;
  r.inside_sampler = [boundary, inside](int count, std::uint64_t seed) {
    // Closure points: inside points plus boundary points, interleaved.
    SampleSet a = inside((count + 1) / 2, seed);
    SampleSet b = boundary(count / 2, mix_seed(seed, "closure-bd"));
    SampleSet s;
    for (int k = 0; k < count; ++k) {
      if (k % 2 == 0) s.points.push_back(a.points[static_cast<std::size_t>(k / 2)]);
      else s.points.push_back(b.points[static_cast<std::size_t>(k / 2)]);
    }
    s.provenance = "closure-inside(count=" + std::to_string(count) + ")";
    return s;
  };
  r.bounding_box = inflate(d.bounding_box, d.closure_tol);
  return r;
}

}  // namespace ruusc
