#include "gpcm/convergence.hpp"

#include <cmath>

namespace gpcm {

AitkenVerdict aitken_converged(double l_prev2, double l_prev, double l_curr,
                               double epsilon) {
  const double denom = l_prev - l_prev2;
  if (std::abs(denom) < 1e-12) return AitkenVerdict::Undefined;
  const double a = (l_curr - l_prev) / denom;
  if (a >= 1.0) return AitkenVerdict::Undefined;
  const double l_inf = l_prev + (l_curr - l_prev) / (1.0 - a);
  const double gap = l_inf - l_curr;
  if (gap >= 0.0 && gap < epsilon) return AitkenVerdict::Converged;
  return AitkenVerdict::NotConverged;
}

}  // namespace gpcm
