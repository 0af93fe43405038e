#pragma once

#include "ruusc/ext_real.hpp"
#include "ruusc/types.hpp"

#include <string>
#include <vector>

namespace ruusc {

/// Per-point two-sided comparison inside a verified statement.
struct PointCheck {
  Vec point;
  ExtReal lhs;
  ExtReal rhs;
  ExtReal gap_value;  // gap(lhs, rhs); inf == inf counts as 0
};

/// Outcome of one verified statement: a table of point checks, the pinned
/// tolerance, and convergence evidence across estimator resolutions.
struct TheoremReport {
  std::string statement;
  double tolerance = 0.0;
  std::vector<int> resolutions;              // estimator sampling scales used
  std::vector<double> max_gap_per_resolution;
  std::vector<PointCheck> points;            // at the finest resolution
  bool passed = false;
  std::vector<std::string> notes;

  double max_gap() const {
    return max_gap_per_resolution.empty() ? 0.0 : max_gap_per_resolution.back();
  }
};

}  // namespace ruusc
