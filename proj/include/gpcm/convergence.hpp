#pragma once

#include <stdexcept>

namespace gpcm {

struct ConvergenceConfig {
  double epsilon = 1e-2;  // gap tolerance on the log-likelihood scale
  int max_iters = 1000;
  int min_iters = 3;

  void validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("ConvergenceConfig: epsilon must be positive");
    if (min_iters < 3 || max_iters < min_iters)
      throw std::invalid_argument("ConvergenceConfig: need max_iters >= min_iters >= 3");
  }
};

enum class AitkenVerdict { Converged, NotConverged, Undefined };

// Modified Aitken acceleration on three consecutive posterior log-likelihood
// values. With a = (l_curr - l_prev) / (l_prev - l_prev2), the asymptotic
// estimate is l_inf = l_prev + (l_curr - l_prev) / (1 - a) (Boehning et al.
// 1994) and convergence holds when 0 <= l_inf - l_curr < epsilon. Returns
// Undefined when the denominator underflows or a >= 1; callers then fall
// back to the lagged difference |l_curr - l_prev| < epsilon.
AitkenVerdict aitken_converged(double l_prev2, double l_prev, double l_curr,
                               double epsilon);

}  // namespace gpcm
