#include "gpcm/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gpcm/special.hpp"

namespace gpcm {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

// Cholesky of a symmetric positive definite precision; throws otherwise.
Eigen::LLT<Eigen::MatrixXd> cholesky_spd(const Eigen::MatrixXd& T) {
  if (T.rows() != T.cols())
    throw std::domain_error("precision matrix must be square");
  if ((T - T.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, T.cwiseAbs().maxCoeff()))
    throw std::domain_error("precision matrix must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(T);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("precision matrix must be positive definite");
  return llt;
}

double half_logdet(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < llt.matrixL().rows(); ++k)
    s += std::log(llt.matrixL()(k, k));
  return s;
}

}  // namespace

double log_gaussian_density(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                            const Eigen::MatrixXd& T) {
  if (y.size() != mu.size() || y.size() != T.rows())
    throw std::invalid_argument("log_gaussian_density: dimension mismatch");
  const auto llt = cholesky_spd(T);
  const Eigen::VectorXd r = y - mu;
  // (y-mu)' T (y-mu) = |L' r|^2 with T = L L'.
  const double quad = (llt.matrixL().transpose() * r).squaredNorm();
  const double d = static_cast<double>(y.size());
  return -0.5 * d * kLog2Pi + half_logdet(llt) - 0.5 * quad;
}

Eigen::MatrixXd component_log_densities(const Eigen::MatrixXd& Y,
                                        const MixturePoint& point) {
  const Eigen::Index n = Y.rows();
  const double d = static_cast<double>(Y.cols());
  const int G = point.components();
  Eigen::MatrixXd logphi(n, G);
  for (int g = 0; g < G; ++g) {
    const auto llt = cholesky_spd(point.T[g]);
    const double c = -0.5 * d * kLog2Pi + half_logdet(llt);
    const Eigen::MatrixXd centered = Y.rowwise() - point.mu[g].transpose();
    // row quadratic forms through the Cholesky factor
    const Eigen::MatrixXd w = centered * llt.matrixL();
    logphi.col(g) = (c - 0.5 * w.array().square().rowwise().sum()).matrix();
  }
  return logphi;
}

double mixture_log_likelihood(const Dataset& data, const MixturePoint& point) {
  if (data.n() < 1) throw std::invalid_argument("mixture_log_likelihood: empty dataset");
  point.validate();
  if (point.mu[0].size() != data.dim())
    throw std::invalid_argument("mixture_log_likelihood: dimension mismatch");
  const Eigen::MatrixXd logphi = component_log_densities(data.Y, point);
  const Eigen::VectorXd logrho = point.rho.array().log().matrix();
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i)
    total += log_sum_exp(logphi.row(i).transpose() + logrho);
  return total;
}

}  // namespace gpcm
