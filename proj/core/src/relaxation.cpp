#include "ruusc/relaxation.hpp"

#include "ruusc/parallel.hpp"
#include "ruusc/sampling.hpp"
#include "ruusc/starshape.hpp"

#include <algorithm>
#include <cmath>

namespace ruusc {

bool s_epsilon_contains(const Eigen::Matrix2d& xi, double eps) {
  if (!(eps > 0.0)) throw SpecError("s_epsilon_contains: eps must be positive");
  const double det = xi(0, 0) * xi(1, 1) - xi(0, 1) * xi(1, 0);
  const double tr = xi(0, 0) + xi(1, 1);
  return eps + det > tr * tr;
}

ConstraintSet s_epsilon_set(double eps, double closure_tol) {
  if (!(eps > 0.0)) throw SpecError("s_epsilon_set: eps must be positive");
  ConstraintSet s;
  s.rows = s.cols = 2;
  s.label = "S_eps(" + std::to_string(eps) + ")";
  s.member = [eps](const Matrix& m) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double tr = m(0, 0) + m(1, 1);
    return eps + det > tr * tr;
  };
  s.closure_member = [eps, closure_tol](const Matrix& m) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double tr = m(0, 0) + m(1, 1);
    return eps + det >= tr * tr - closure_tol;
  };
  return s;
}

ConstraintSet matrix_ball_set(int rows, int cols, double radius) {
  if (!(radius > 0.0)) throw SpecError("matrix_ball_set: radius must be positive");
  ConstraintSet s;
  s.rows = rows;
  s.cols = cols;
  s.label = "matrix-ball(" + std::to_string(radius) + ")";
  s.member = [radius](const Matrix& m) { return m.norm() <= radius; };
  s.closure_member = [radius](const Matrix& m) { return m.norm() <= radius + 1e-9; };
  return s;
}

ConstraintSet interval_set(double lo, double hi) {
  if (!(lo <= 0.0 && 0.0 <= hi && lo < hi)) throw SpecError("interval_set: need lo <= 0 <= hi");
  ConstraintSet s;
  s.rows = s.cols = 1;
  s.label = "interval[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  s.member = [lo, hi](const Matrix& m) { return m(0, 0) >= lo && m(0, 0) <= hi; };
  s.closure_member = [lo, hi](const Matrix& m) {
    return m(0, 0) >= lo - 1e-9 && m(0, 0) <= hi + 1e-9;
  };
  return s;
}

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> s_epsilon_nonconvexity_witness(double eps) {
  const double root_eps = std::sqrt(eps);
  const double root_32 = std::sqrt(1.5 * eps);
  Eigen::Matrix2d xi, zeta;
  xi << root_32, -root_eps, root_eps, 0.0;
  zeta << 0.0, root_eps, -root_eps, root_32;
  return {xi, zeta};
}

namespace {

Eigen::Matrix2d random_matrix2(Rng& rng, double amp) {
  Eigen::Matrix2d m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = rng.uniform(-amp, amp);
  return m;
}

/// Matrices with eps + det = tr^2 up to a square root rounding: a = 0,
/// d = +/- sqrt(eps - bc), so det = -bc and tr^2 = eps - bc.
Eigen::Matrix2d boundary_case_matrix(Rng& rng, double eps) {
  const double root_eps = std::sqrt(eps);
  const double b = rng.uniform(-root_eps, root_eps);
  const double c = rng.uniform(-root_eps, root_eps);
  const double d = (rng.bits() & 1 ? 1.0 : -1.0) * std::sqrt(std::max(0.0, eps - b * c));
  Eigen::Matrix2d m;
  m << 0.0, b, c, d;
  // Conjugation by a rotation preserves det and trace.
  const double th = rng.uniform(0.0, 2.0 * M_PI);
  Eigen::Matrix2d R;
  R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  return R * m * R.transpose();
}

}  // namespace

SEpsilonReport check_s_epsilon_properties(double eps, int closure_samples, int rank_one_samples,
                                          std::uint64_t seed, int threads) {
  if (!(eps > 0.0)) throw HypothesisRefused("check_s_epsilon_properties: eps must be positive");

  SEpsilonReport rep;
  rep.eps = eps;
  rep.zero_is_member = s_epsilon_contains(Eigen::Matrix2d::Zero(), eps);

  const auto [xi, zeta] = s_epsilon_nonconvexity_witness(eps);
  rep.witness_pair_in = s_epsilon_contains(xi, eps) && s_epsilon_contains(zeta, eps);
  rep.witness_midpoint_out = !s_epsilon_contains(0.5 * xi + 0.5 * zeta, eps);

  const ConstraintSet S = s_epsilon_set(eps);
  const std::vector<double> ts = geometric_t_schedule(1, 20);

  // Radial closure property: t * closure(S_eps) stays strictly inside.
  {
    Rng rng(mix_seed(seed, "seps-closure"));
    std::vector<Eigen::Matrix2d> closure;
    closure.reserve(static_cast<std::size_t>(closure_samples));
    long attempts = 0;
    while (static_cast<int>(closure.size()) < closure_samples && attempts < 400L * closure_samples) {
      ++attempts;
      if (closure.size() % 4 == 3) {
        closure.push_back(boundary_case_matrix(rng, eps));
        continue;
      }
      Eigen::Matrix2d m = random_matrix2(rng, 3.0);
      if (S.closure_member(m)) closure.push_back(m);
    }
    if (static_cast<int>(closure.size()) < closure_samples)
      throw Error("check_s_epsilon_properties: closure sampling starved");

    const int n = static_cast<int>(closure.size());
    std::vector<long> viol(static_cast<std::size_t>(n), 0);
    parallel_for(n, threads, [&](int i) {
      for (double t : ts)
        if (!s_epsilon_contains(t * closure[static_cast<std::size_t>(i)], eps))
          ++viol[static_cast<std::size_t>(i)];
    });
    for (long v : viol) rep.radial_violations += v;
    rep.radial_checked = static_cast<long>(n) * static_cast<long>(ts.size());
  }

  // Unboundedness: the trace-free ray [[0, s], [-s, 0]] has det = s^2 and
  // stays inside for arbitrarily large s.
  {
    rep.unbounded_ray_ok = true;
    for (double s = 1.0; s <= 1e6; s *= 10.0) {
      Eigen::Matrix2d m;
      m << 0.0, s, -s, 0.0;
      if (!s_epsilon_contains(m, eps)) rep.unbounded_ray_ok = false;
    }
  }

  // Rank-one convexity along sampled rank-one segments.
  {
    Rng rng(mix_seed(seed, "seps-rank1"));
    long built = 0, attempts = 0;
    while (built < rank_one_samples && attempts < 400L * rank_one_samples) {
      ++attempts;
      Eigen::Matrix2d a_mat = random_matrix2(rng, 2.0);
      if (!S.member(a_mat)) continue;
      Eigen::Vector2d va(rng.uniform(-1, 1), rng.uniform(-1, 1));
      Eigen::Vector2d vb(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const double s = rng.uniform(-1.5, 1.5);
      Eigen::Matrix2d b_mat = a_mat + s * (va * vb.transpose());
      if (!S.member(b_mat)) continue;
      ++built;
      for (int j = 1; j < 12; ++j) {
        const double t = j / 12.0;
        Eigen::Matrix2d seg = t * a_mat + (1.0 - t) * b_mat;
        ++rep.rank_one_checked;
        if (!S.member(seg)) ++rep.rank_one_violations;
      }
    }
    if (built < rank_one_samples)
      throw Error("check_s_epsilon_properties: rank-one sampling starved");
  }

  rep.pass = rep.zero_is_member && rep.witness_pair_in && rep.witness_midpoint_out &&
             rep.radial_violations == 0 && rep.unbounded_ray_ok && rep.rank_one_violations == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// Integrands
// ---------------------------------------------------------------------------

Integrand frobenius_squared(int rows, int cols) {
  Integrand L;
  L.rows = rows;
  L.cols = cols;
  L.p = 2.0;
  L.c = L.C = L.C_prime = 1.0;
  L.declared_convex = true;
  L.name = "frobenius_sq";
  L.L = [](const Matrix& m) { return m.squaredNorm(); };
  return L;
}

Integrand frobenius_cubed_misdeclared(int rows, int cols) {
  Integrand L;
  L.rows = rows;
  L.cols = cols;
  L.p = 2.0;  // wrong on purpose: the true growth is cubic
  L.c = 1.0;
  L.C = 2.0;
  L.C_prime = 1.0;
  L.declared_convex = true;
  L.name = "frobenius_cubed";
  L.L = [](const Matrix& m) { return std::pow(m.norm(), 3.0); };
  return L;
}

Integrand shifted_well(int rows, int cols) {
  Integrand L;
  L.rows = rows;
  L.cols = cols;
  L.p = 2.0;
  L.c = 0.1;
  L.C = 1.1;
  L.C_prime = 2.0;
  L.declared_convex = false;
  L.name = "shifted_well";
  L.L = [](const Matrix& m) {
    const double r = m.norm();
    return (r - 1.0) * (r - 1.0) + 0.1 * r * r;
  };
  return L;
}

Integrand negated_frobenius_squared(int rows, int cols) {
  Integrand L;
  L.rows = rows;
  L.cols = cols;
  L.p = 2.0;
  L.c = 1.0;
  L.C = 1.0;
  L.declared_convex = false;
  L.name = "neg_frobenius_sq";
  L.L = [](const Matrix& m) { return -m.squaredNorm(); };
  return L;
}

GrowthCheck check_growth_and_lipschitz(const Integrand& L, int samples, double radius,
                                       std::uint64_t seed) {
  GrowthCheck out;
  Rng rng(mix_seed(seed, "growth"));
  const double slack = 1e-12;
  out.c_est = std::numeric_limits<double>::infinity();
  out.C_est = 0.0;
  out.C_prime_est = 0.0;

  Matrix prev;
  for (int k = 0; k < samples; ++k) {
    // Stratified radius so large matrices are covered up to `radius`.
    Matrix m(L.rows, L.cols);
    for (int i = 0; i < L.rows; ++i)
      for (int j = 0; j < L.cols; ++j) m(i, j) = rng.normal();
    const double nrm = m.norm();
    if (nrm > 1e-12) m *= (radius * (k + 1.0) / samples) / nrm;

    const double val = L.L(m);
    const double mp = std::pow(m.norm(), L.p);
    if (val < L.c * mp - slack) {
      out.which = "lower growth";
      out.witness = m;
      return out;
    }
    if (val > L.C * (1.0 + mp) + slack) {
      out.which = "upper growth";
      out.witness = m;
      return out;
    }
    if (m.norm() > 1e-9) out.c_est = std::min(out.c_est, val / mp);
    out.C_est = std::max(out.C_est, val / (1.0 + mp));

    if (k > 0) {
      const double lhs = std::abs(val - L.L(prev));
      const double envelope = (m - prev).norm() *
                              (1.0 + std::pow(m.norm(), L.p - 1.0) + std::pow(prev.norm(), L.p - 1.0));
      if (lhs > L.C_prime * envelope + slack) {
        out.which = "Lipschitz";
        out.witness = m;
        return out;
      }
      if (envelope > 1e-12) out.C_prime_est = std::max(out.C_prime_est, lhs / envelope);
    }
    prev = m;
  }
  out.pass = true;
  return out;
}

QuasiconvexityReport check_quasiconvexity_necessary(const Integrand& L, int xi_samples,
                                                    int fields_per_xi, int mesh_cells,
                                                    std::uint64_t seed) {
  QuasiconvexityReport rep;
  Mesh unit_cell;
  unit_cell.d = L.cols;
  unit_cell.cells = mesh_cells;
  unit_cell.components = L.rows;

  Rng rng(mix_seed(seed, "qcx"));
  const double slack = 1e-12;
  const double cell_measure = std::pow(unit_cell.h(), unit_cell.d);

  for (int s = 0; s < xi_samples; ++s) {
    Matrix xi(L.rows, L.cols);
    for (int i = 0; i < L.rows; ++i)
      for (int j = 0; j < L.cols; ++j) xi(i, j) = rng.uniform(-2.0, 2.0);
    const double lhs = L.L(xi);

    for (int fidx = 0; fidx < fields_per_xi; ++fidx) {
      // Zero-boundary perturbation with random interior nodal values.
      MeshField phi = zero_field(unit_cell);
      const long npa = unit_cell.nodes_per_axis();
      for (long n = 0; n < unit_cell.node_count(); ++n) {
        bool boundary = false;
        if (unit_cell.d == 1) {
          boundary = (n == 0 || n == npa - 1);
        } else {
          const long i = n / npa, j = n % npa;
          boundary = (i == 0 || i == npa - 1 || j == 0 || j == npa - 1);
        }
        if (boundary) continue;
        for (int k = 0; k < unit_cell.components; ++k)
          phi.nodal(n, k) = rng.uniform(-0.5, 0.5) * unit_cell.h();
      }
      // phi == 0 for the first probe: equality case.
      if (fidx == 0) phi.nodal.setZero();

      double avg = 0.0;
      for (long c = 0; c < unit_cell.cell_count(); ++c)
        avg += L.L(xi + phi.cell_gradient(c)) * cell_measure;

      ++rep.checked;
      if (avg < lhs - slack) {
        ++rep.violations;
        if (rep.violations == 1) rep.witness_xi = xi;
      }
    }
  }
  rep.pass = rep.violations == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// Meshes and energies
// ---------------------------------------------------------------------------

Matrix MeshField::cell_gradient(long cell) const {
  const double h = mesh.h();
  Matrix g(mesh.components, mesh.d);
  if (mesh.d == 1) {
    for (int k = 0; k < mesh.components; ++k)
      g(k, 0) = (nodal(cell + 1, k) - nodal(cell, k)) / h;
    return g;
  }
  const long npa = mesh.nodes_per_axis();
  const long i = cell / mesh.cells;
  const long j = cell % mesh.cells;
  const long n00 = i * npa + j;
  const long n01 = i * npa + (j + 1);
  const long n10 = (i + 1) * npa + j;
  const long n11 = (i + 1) * npa + (j + 1);
  for (int k = 0; k < mesh.components; ++k) {
    g(k, 0) = (nodal(n10, k) + nodal(n11, k) - nodal(n00, k) - nodal(n01, k)) / (2.0 * h);
    g(k, 1) = (nodal(n01, k) + nodal(n11, k) - nodal(n00, k) - nodal(n10, k)) / (2.0 * h);
  }
  return g;
}

MeshField MeshField::scaled_by(double t) const {
  MeshField out = *this;
  out.nodal *= t;
  return out;
}

Vec MeshField::node_coords(long node) const {
  const double h = mesh.h();
  if (mesh.d == 1) return vec1(static_cast<double>(node) * h);
  const long npa = mesh.nodes_per_axis();
  return vec2(static_cast<double>(node / npa) * h, static_cast<double>(node % npa) * h);
}

MeshField zero_field(const Mesh& mesh) {
  MeshField f;
  f.mesh = mesh;
  f.nodal = Eigen::MatrixXd::Zero(mesh.node_count(), mesh.components);
  return f;
}

MeshField affine_field(const Mesh& mesh, const Matrix& G) {
  if (G.rows() != mesh.components || G.cols() != mesh.d)
    throw SpecError("affine_field: gradient shape mismatch");
  MeshField f = zero_field(mesh);
  for (long n = 0; n < mesh.node_count(); ++n) {
    const Vec x = f.node_coords(n);
    for (int k = 0; k < mesh.components; ++k) {
      double v = 0.0;
      for (int a = 0; a < mesh.d; ++a) v += G(k, a) * x[a];
      f.nodal(n, k) = v;
    }
  }
  return f;
}

double energy_J(const MeshField& u, const Integrand& L) {
  if (L.rows != u.mesh.components || L.cols != u.mesh.d)
    throw SpecError("energy_J: integrand shape does not match the mesh field");
  const double cell_measure = std::pow(u.mesh.h(), u.mesh.d);
  double total = 0.0;
  for (long c = 0; c < u.mesh.cell_count(); ++c) total += L.L(u.cell_gradient(c)) * cell_measure;
  return total;
}

std::vector<MeshField> sample_constrained_fields(const ConstraintSet& S, const Mesh& mesh,
                                                 int count, double amplitude, std::uint64_t seed) {
  if (S.rows != mesh.components || S.cols != mesh.d)
    throw SpecError("sample_constrained_fields: constraint shape does not match the mesh");
  if (!S.member(Matrix::Zero(S.rows, S.cols)))
    throw HypothesisRefused("sample_constrained_fields: 0 is not in S");

  std::vector<MeshField> fields;
  fields.reserve(static_cast<std::size_t>(count));
  fields.push_back(zero_field(mesh));

  Rng rng(mix_seed(seed, "fields"));
  const double nodal_amp = amplitude * mesh.h();
  long attempts = 0;
  const long cap = std::max(200L * count, 2000L);
  while (static_cast<int>(fields.size()) < count && attempts < cap) {
    ++attempts;
    MeshField f = zero_field(mesh);
    for (long n = 0; n < mesh.node_count(); ++n)
      for (int k = 0; k < mesh.components; ++k) f.nodal(n, k) = rng.uniform(-nodal_amp, nodal_amp);
    bool ok = true;
    for (long c = 0; c < mesh.cell_count() && ok; ++c) ok = S.member(f.cell_gradient(c));
    if (ok) fields.push_back(std::move(f));
  }
  if (static_cast<int>(fields.size()) < count)
    throw SpecError(
        "sample_constrained_fields: acceptance rate too low; reduce the amplitude");
  return fields;
}

TheoremReport verify_energy_modulus_bound(const Integrand& L, const ConstraintSet& S,
                                          const std::vector<MeshField>& fields,
                                          const EnergyModulusParams& params) {
  TheoremReport rep;
  rep.statement = "energy_modulus_bound";
  rep.tolerance = params.slack;
  rep.resolutions = {1};

  GrowthCheck growth = check_growth_and_lipschitz(L, params.growth_samples, params.growth_radius,
                                                  params.seed);
  if (!growth.pass)
    throw HypothesisRefused("energy_modulus_bound: growth/Lipschitz check failed (" + growth.which +
                            ")");
  rep.notes.push_back("growth check: c_est=" + std::to_string(growth.c_est) +
                      " C_est=" + std::to_string(growth.C_est) +
                      " C'_est=" + std::to_string(growth.C_prime_est));
  if (!S.member(Matrix::Zero(S.rows, S.cols)))
    throw HypothesisRefused("energy_modulus_bound: 0 is not in S");
  if (fields.empty()) throw SpecError("energy_modulus_bound: no fields supplied");

  const double omega = 1.0;  // the domain is the unit interval/square
  const double factor = 4.0 * L.C_prime * std::max(1.0, 1.0 / L.c);

  const int nf = static_cast<int>(fields.size());
  std::vector<std::vector<PointCheck>> rows(static_cast<std::size_t>(nf));
  parallel_for(nf, params.threads, [&](int i) {
    const MeshField& u = fields[static_cast<std::size_t>(i)];
    const double ju = energy_J(u, L);
    for (double t : params.t_schedule) {
      const double jtu = energy_J(u.scaled_by(t), L);
      const double ratio = (jtu - ju) / (omega + ju);
      const double bound = factor * (1.0 - t) + params.slack;
      PointCheck pc;
      pc.point = vec2(static_cast<double>(i), t);
      pc.lhs = ExtReal::finite(ratio);
      pc.rhs = ExtReal::finite(bound);
      pc.gap_value = ExtReal::finite(std::max(0.0, ratio - bound));
      rows[static_cast<std::size_t>(i)].push_back(std::move(pc));
    }
  });

  double max_excess = 0.0;
  for (auto& row : rows)
    for (auto& pc : row) {
      max_excess = std::max(max_excess, pc.gap_value.as_double());
      rep.points.push_back(std::move(pc));
    }
  rep.max_gap_per_resolution = {max_excess};
  rep.passed = max_excess == 0.0;
  rep.notes.push_back("bound factor 4 C' max{1, 1/c} = " + std::to_string(factor));
  return rep;
}

EnergyRadialCheck verify_radial_energy_limit(const MeshField& u, const Integrand& L,
                                             const ConstraintSet& S, double tol, int k_max) {
  for (long c = 0; c < u.mesh.cell_count(); ++c)
    if (!S.closure_member(u.cell_gradient(c)))
      throw HypothesisRefused(
          "verify_radial_energy_limit: a cell gradient leaves the closure of S");

  EnergyRadialCheck out;
  out.t_schedule = geometric_t_schedule(1, k_max);
  out.energy_at_field = energy_J(u, L);
  out.energies.reserve(out.t_schedule.size());
  for (double t : out.t_schedule) out.energies.push_back(energy_J(u.scaled_by(t), L));

  // Geometric decay of the gaps g_k = |J(t_k u) - J(u)| along t_k = 1 - 2^-k.
  out.geometric_decay = true;
  double prev_gap = -1.0;
  for (std::size_t k = 0; k < out.energies.size(); ++k) {
    const double g = std::abs(out.energies[k] - out.energy_at_field);
    if (prev_gap >= 0.0 && g > 1e-14 && prev_gap > 1e-14 && g > 0.75 * prev_gap)
      out.geometric_decay = false;
    prev_gap = g;
  }

  // Richardson extrapolation for a first-order-in-(1-t) error.
  const std::size_t n = out.energies.size();
  out.extrapolated = n >= 2 ? 2.0 * out.energies[n - 1] - out.energies[n - 2] : out.energies.back();
  out.extrapolation_gap = std::abs(out.extrapolated - out.energy_at_field);
  out.pass = out.geometric_decay && out.extrapolation_gap <= tol;
  return out;
}

}  // namespace ruusc
