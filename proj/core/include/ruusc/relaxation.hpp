#pragma once

#include "ruusc/report.hpp"
#include "ruusc/types.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace ruusc {

using Matrix = Eigen::MatrixXd;

/// Strict membership test for S_eps = { xi in M^{2x2} : eps + det(xi) > tr(xi)^2 }.
bool s_epsilon_contains(const Eigen::Matrix2d& xi, double eps);

/// Constraint set of admissible gradients in M^{rows x cols}.
struct ConstraintSet {
  int rows = 2;
  int cols = 2;
  std::function<bool(const Matrix&)> member;
  std::function<bool(const Matrix&)> closure_member;  // padded by a tolerance
  std::string label;
};

ConstraintSet s_epsilon_set(double eps, double closure_tol = 1e-9);
ConstraintSet matrix_ball_set(int rows, int cols, double radius);
ConstraintSet interval_set(double lo, double hi);  // 1x1 matrices

/// Property survey of S_eps: membership of the witness pair and its
/// midpoint, the radial closure property, unboundedness along a trace-free
/// ray, and rank-one convexity along sampled rank-one segments.
struct SEpsilonReport {
  double eps = 0.0;
  bool zero_is_member = false;
  bool witness_pair_in = false;       // both witness matrices belong
  bool witness_midpoint_out = false;  // their midpoint does not (nonconvexity)
  long radial_checked = 0;
  long radial_violations = 0;
  bool unbounded_ray_ok = false;
  long rank_one_checked = 0;
  long rank_one_violations = 0;
  bool pass = false;
};

/// The paper-free description: the two explicit matrices demonstrating
/// nonconvexity of S_eps.
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> s_epsilon_nonconvexity_witness(double eps);

SEpsilonReport check_s_epsilon_properties(double eps, int closure_samples, int rank_one_samples,
                                          std::uint64_t seed, int threads = 1);

/// Integrand L on matrices with declared p-growth and Lipschitz constants:
///   c |xi|^p <= L(xi) <= C (1 + |xi|^p)
///   |L(xi) - L(zeta)| <= C' |xi - zeta| (1 + |xi|^{p-1} + |zeta|^{p-1})
struct Integrand {
  std::function<double(const Matrix&)> L;
  int rows = 2;
  int cols = 2;
  double p = 2.0;
  double c = 1.0;
  double C = 1.0;
  double C_prime = 1.0;
  bool declared_convex = false;
  std::string name;
};

Integrand frobenius_squared(int rows, int cols);
/// |xi|^3 with deliberately wrong declared p = 2 growth (for the failure path).
Integrand frobenius_cubed_misdeclared(int rows, int cols);
/// (|xi| - 1)^2 + 0.1 |xi|^2: nonconvex radial well with p = 2 growth.
Integrand shifted_well(int rows, int cols);
Integrand negated_frobenius_squared(int rows, int cols);  // not quasiconvex

struct GrowthCheck {
  bool pass = false;
  double c_est = 0.0;        // min L / |xi|^p over samples
  double C_est = 0.0;        // max L / (1 + |xi|^p)
  double C_prime_est = 0.0;  // max Lipschitz ratio over sampled pairs
  Matrix witness;            // first violating sample, when failing
  std::string which;         // violated inequality
};

GrowthCheck check_growth_and_lipschitz(const Integrand& L, int samples, double radius,
                                       std::uint64_t seed);

/// Necessary condition for quasiconvexity: the cell average of
/// L(xi + grad phi) over zero-boundary perturbations never drops below
/// L(xi). An inf over all perturbations is out of reach, so a pass reads
/// "no violation found".
struct QuasiconvexityReport {
  long checked = 0;
  long violations = 0;
  Matrix witness_xi;
  bool pass = false;
};

QuasiconvexityReport check_quasiconvexity_necessary(const Integrand& L, int xi_samples,
                                                    int fields_per_xi, int mesh_cells,
                                                    std::uint64_t seed);

/// Uniform mesh on ]0,1[^d (d = 1 or 2) with `cells` per axis and
/// m-component nodal values; gradients are constant per cell.
struct Mesh {
  int d = 2;
  int cells = 8;
  int components = 2;

  double h() const { return 1.0 / cells; }
  long nodes_per_axis() const { return cells + 1; }
  long node_count() const {
    long n = nodes_per_axis();
    return d == 1 ? n : n * n;
  }
  long cell_count() const { return d == 1 ? cells : static_cast<long>(cells) * cells; }
};

struct MeshField {
  Mesh mesh;
  Eigen::MatrixXd nodal;  // node_count x components

  /// m x d gradient of the multilinear interpolant, constant on the cell.
  Matrix cell_gradient(long cell) const;

  MeshField scaled_by(double t) const;

  /// Node coordinates (for serialization).
  Vec node_coords(long node) const;
};

MeshField zero_field(const Mesh& mesh);
/// Field with u(x) = G x (every cell gradient equals G exactly).
MeshField affine_field(const Mesh& mesh, const Matrix& G);

/// Midpoint quadrature of L over the cell gradients: sum over cells of
/// h^d L(grad u). Exact for the piecewise-constant gradients of MeshField.
double energy_J(const MeshField& u, const Integrand& L);

/// Rejection sampling of fields whose every cell gradient lies in S. The
/// zero field is always first (0 in S is required). Nodal amplitudes scale
/// with amplitude * h.
std::vector<MeshField> sample_constrained_fields(const ConstraintSet& S, const Mesh& mesh,
                                                 int count, double amplitude, std::uint64_t seed);

/// Sampled modulus bound for the constrained energy: for every admissible
/// field and scheduled t,
///   (J(t u) - J(u)) / (|Omega| + J(u)) <= 4 C' max{1, 1/c} (1 - t) + 1e-9.
struct EnergyModulusParams {
  std::vector<double> t_schedule = {0.9, 0.99, 0.999};
  double slack = 1e-9;
  int growth_samples = 2000;
  double growth_radius = 5.0;
  std::uint64_t seed = 7;
  int threads = 1;
};

TheoremReport verify_energy_modulus_bound(const Integrand& L, const ConstraintSet& S,
                                          const std::vector<MeshField>& fields,
                                          const EnergyModulusParams& params = {});

/// Radial limit of the energy: J(t u) -> J(u) as t -> 1, with geometric
/// tail decay and a Richardson-extrapolated limit.
struct EnergyRadialCheck {
  std::vector<double> t_schedule;
  std::vector<double> energies;   // J(t u)
  double energy_at_field = 0.0;   // J(u)
  double extrapolated = 0.0;
  double extrapolation_gap = 0.0;
  bool geometric_decay = false;
  bool pass = false;
};

EnergyRadialCheck verify_radial_energy_limit(const MeshField& u, const Integrand& L,
                                             const ConstraintSet& S, double tol = 1e-6,
                                             int k_max = 20);

}  // namespace ruusc
