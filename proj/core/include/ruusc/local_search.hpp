#pragma once

#include "ruusc/types.hpp"

#include <functional>
#include <optional>

namespace ruusc {

/// Derivative-free coordinate ascent: from `start`, tries +/- step moves per
/// coordinate, keeps improvements, halves the step each round. `score`
/// returns nullopt for infeasible points. Returns the best point found
/// (possibly `start`). Deterministic.
struct CoordinateSearch {
  double step0 = 0.1;
  int rounds = 3;
  int max_sweeps_per_round = 32;

  template <typename Score>
  std::pair<Vec, double> maximize(const Vec& start, double start_score, Score&& score) const {
    Vec best = start;
    double best_val = start_score;
    double step = step0;
    for (int r = 0; r < rounds; ++r) {
      for (int sweep = 0; sweep < max_sweeps_per_round; ++sweep) {
        bool improved = false;
        for (int i = 0; i < best.size(); ++i) {
          for (double s : {step, -step}) {
            Vec cand = best;
            cand[i] += s;
            std::optional<double> v = score(cand);
            if (v && *v > best_val) {
              best = std::move(cand);
              best_val = *v;
              improved = true;
            }
          }
        }
        if (!improved) break;
      }
      step *= 0.5;
    }
    return {best, best_val};
  }
};

}  // namespace ruusc
