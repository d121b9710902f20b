#include "gpcm/special.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gpcm {

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
  return boost::math::digamma(x);
}

double log_multivariate_gamma(int d, double x) {
  double s = 0.25 * d * (d - 1) * std::log(std::numbers::pi);
  for (int k = 1; k <= d; ++k) s += std::lgamma(x + 0.5 * (1 - k));
  return s;
}

double wishart_expected_logdet(double df, const Eigen::MatrixXd& W) {
  const int d = static_cast<int>(W.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(W);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("wishart_expected_logdet: inverse scale is not SPD");
  double logdet_w = 0.0;
  for (int k = 0; k < d; ++k) logdet_w += 2.0 * std::log(llt.matrixL()(k, k));
  double s = d * std::numbers::ln2 - logdet_w;
  for (int k = 1; k <= d; ++k) s += digamma(0.5 * (df + 1 - k));
  return s;
}

double log_sum_exp(const Eigen::VectorXd& v) {
  if (v.size() == 0) return -std::numeric_limits<double>::infinity();
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace gpcm
