#pragma once

#include "ruusc/oracle.hpp"
#include "ruusc/region.hpp"

#include <string>
#include <vector>

namespace ruusc {

// ---------------------------------------------------------------------------
// Built-in functions. Every entry declares its known analytic properties;
// verifiers treat the declarations as ground truth and spot-check them.
// ---------------------------------------------------------------------------

/// |u|^p (Euclidean norm to the power p > 0). Convex for p >= 1.
FunctionOracle norm_power(int dim, double p);

/// a . u + b.
FunctionOracle affine(const Vec& a, double b);

/// Constant c.
FunctionOracle constant_fn(int dim, double c);

/// scale * |u - shift|^2 + offset, scale > 0.
FunctionOracle convex_quadratic(int dim, double scale, const Vec& shift, double offset);

/// x^2 + y^2 + x y^3 on R^2: continuous, nonconvex.
FunctionOracle nonconvex_poly2d();

/// 1 / (1 - |u|) on the open unit ball, +inf outside: convex barrier.
FunctionOracle inverse_barrier(int dim);

/// sin(1 / (1 - |u|)) for |u| < 1, 0 for |u| >= 1. Continuous nowhere near
/// the sphere; its radial profiles toward |u| = 1 oscillate without a limit.
FunctionOracle radial_oscillator(int dim);

/// Equal to `height` at the single point x0 (bitwise), `base` elsewhere.
/// With height > base this fails lower semicontinuity exactly at x0.
FunctionOracle spike(const Vec& x0, double height, double base);

/// 1 for x <= 0, 0 for x > 0 (1-D step with a downward jump at 0+).
FunctionOracle step_down_1d();

/// -|u| (concave; violates any positive lower growth).
FunctionOracle neg_norm(int dim);

/// (1 + x^2)(1 + (x-3)^2) on R: positive, product of two convex factors,
/// itself nonconvex (local max at x = 1.5).
FunctionOracle product_wells_1d();

// Compositions. Results are pure oracles; traits are combined conservatively.
FunctionOracle sum(const FunctionOracle& f, const FunctionOracle& g);
FunctionOracle pointwise_product(const FunctionOracle& f, const FunctionOracle& g);
FunctionOracle scaled(const FunctionOracle& f, double lambda);
FunctionOracle shifted(const FunctionOracle& f, double c);

/// f + indicator(D): restriction of f to D.
FunctionOracle restricted(const FunctionOracle& f, const Region& d);

// ---------------------------------------------------------------------------
// Name + parameter-list addressing, used by the JSON problem format and by
// provenance reconstruction. See docs/FORMATS.md for the parameter schema.
// ---------------------------------------------------------------------------

FunctionOracle make_catalog_function(const std::string& name, const std::vector<double>& params);
Region make_catalog_region(const std::string& name, const std::vector<double>& params);

/// Entries exercised by the catalog self-tests: name, params, and a probe box.
struct CatalogProbe {
  std::string name;
  std::vector<double> params;
  Box probe_box;
};
std::vector<CatalogProbe> catalog_probes();

}  // namespace ruusc
