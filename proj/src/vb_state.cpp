#include "gpcm/vb_state.hpp"

#include <cmath>
#include <stdexcept>

#include "gpcm/special.hpp"

namespace gpcm {

double GammaBlock::log_mean() const {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("GammaBlock: parameters must be positive");
  return digamma(0.5 * a) - std::log(0.5 * b);
}

Eigen::MatrixXd WishartBlock::mean() const {
  Eigen::LLT<Eigen::MatrixXd> llt(inv_scale);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("WishartBlock: inverse scale is not SPD");
  const Eigen::Index d = inv_scale.rows();
  Eigen::MatrixXd w = df * llt.solve(Eigen::MatrixXd::Identity(d, d));
  return 0.5 * (w + w.transpose());
}

double WishartBlock::expected_logdet() const {
  return wishart_expected_logdet(df, inv_scale);
}

std::pair<Eigen::VectorXd, double> normalize_shape(const Eigen::VectorXd& expected_diag) {
  if (expected_diag.size() < 1)
    throw std::invalid_argument("normalize_shape: empty vector");
  if ((expected_diag.array() <= 0.0).any())
    throw std::invalid_argument("normalize_shape: entries must be positive");
  // Geometric mean through logs; the rescaled product is then 1 up to
  // rounding of the final exp.
  const double log_c = expected_diag.array().log().mean();
  const double c = std::exp(log_c);
  return {(expected_diag.array() / c).matrix(), c};
}

MixturePoint VbState::point_estimate() const {
  MixturePoint p;
  p.rho = alpha / alpha.sum();
  p.mu.resize(G);
  p.T.resize(G);
  for (int g = 0; g < G; ++g) {
    p.mu[g] = m.row(g).transpose();
    p.T[g] = E_T[g];
  }
  return p;
}

}  // namespace gpcm
