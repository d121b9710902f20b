#include "gpcm/selection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gpcm/density.hpp"
#include "gpcm/special.hpp"

namespace gpcm {

namespace {

double logdet_spd(const Eigen::MatrixXd& A) {
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("logdet_spd: matrix is not SPD");
  double s = 0.0;
  for (Eigen::Index k = 0; k < A.rows(); ++k) s += 2.0 * std::log(llt.matrixL()(k, k));
  return s;
}

}  // namespace

double posterior_loglik(const Dataset& data, const MixturePoint& point) {
  return mixture_log_likelihood(data, point);
}

double kl_dirichlet(const Eigen::VectorXd& aq, const Eigen::VectorXd& ap) {
  if (aq.size() != ap.size())
    throw std::invalid_argument("kl_dirichlet: size mismatch");
  const double sq = aq.sum();
  double kl = std::lgamma(sq) - std::lgamma(ap.sum());
  for (Eigen::Index g = 0; g < aq.size(); ++g) {
    kl += std::lgamma(ap(g)) - std::lgamma(aq(g));
    kl += (aq(g) - ap(g)) * (digamma(aq(g)) - digamma(sq));
  }
  return kl;
}

double kl_gamma(const GammaBlock& q, const GammaBlock& p) {
  // Shape/rate form of the chi-square bookkeeping.
  const double sq = 0.5 * q.a, rq = 0.5 * q.b;
  const double sp = 0.5 * p.a, rp = 0.5 * p.b;
  return (sq - sp) * digamma(sq) - std::lgamma(sq) + std::lgamma(sp) +
         sp * (std::log(rq) - std::log(rp)) + sq * (rp - rq) / rq;
}

double kl_wishart(const WishartBlock& q, const WishartBlock& p) {
  const int d = static_cast<int>(q.inv_scale.rows());
  const double elogdet = q.expected_logdet();
  const Eigen::MatrixXd ET = q.mean();
  // log normalizer with inverse scale W: (df/2) log|W| - (df d/2) log 2 - log Gamma_d(df/2)
  auto log_norm = [d](const WishartBlock& w) {
    return 0.5 * w.df * logdet_spd(w.inv_scale) -
           0.5 * w.df * d * std::numbers::ln2 -
           log_multivariate_gamma(d, 0.5 * w.df);
  };
  return 0.5 * (q.df - p.df) * elogdet -
         0.5 * ((q.inv_scale - p.inv_scale) * ET).trace() + log_norm(q) -
         log_norm(p);
}

double kl_gaussian_mean(const Eigen::VectorXd& m_q, double beta_q,
                        const Eigen::VectorXd& m_p, double beta_p,
                        const Eigen::MatrixXd& E_T) {
  const double d = static_cast<double>(m_q.size());
  const Eigen::VectorXd dm = m_q - m_p;
  const double quad = dm.dot(E_T * dm);
  return 0.5 * (d * beta_p / beta_q + beta_p * quad - d +
                d * std::log(beta_q / beta_p));
}

double log_dirichlet_pdf(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha) {
  double s = std::lgamma(alpha.sum());
  for (Eigen::Index g = 0; g < alpha.size(); ++g)
    s += -std::lgamma(alpha(g)) + (alpha(g) - 1.0) * std::log(x(g));
  return s;
}

double log_gamma_pdf(double x, const GammaBlock& g) {
  const double shape = 0.5 * g.a, rate = 0.5 * g.b;
  return shape * std::log(rate) - std::lgamma(shape) +
         (shape - 1.0) * std::log(x) - rate * x;
}

double log_wishart_pdf(const Eigen::MatrixXd& T, const WishartBlock& w) {
  const int d = static_cast<int>(T.rows());
  return 0.5 * (w.df - d - 1) * logdet_spd(T) - 0.5 * (w.inv_scale * T).trace() +
         0.5 * w.df * logdet_spd(w.inv_scale) - 0.5 * w.df * d * std::numbers::ln2 -
         log_multivariate_gamma(d, 0.5 * w.df);
}

namespace {

// p_D contribution of one factor: -KL(q||p) + log q(mean) - log p(mean).
double gamma_term(const GammaBlock& q, const GammaBlock& p) {
  const double at_mean = q.mean();
  return -kl_gamma(q, p) + log_gamma_pdf(at_mean, q) - log_gamma_pdf(at_mean, p);
}

double wishart_term(const WishartBlock& q, const WishartBlock& p) {
  const Eigen::MatrixXd at_mean = q.mean();
  return -kl_wishart(q, p) + log_wishart_pdf(at_mean, q) - log_wishart_pdf(at_mean, p);
}

double gaussian_mean_term(const Eigen::VectorXd& m_q, double beta_q,
                          const Eigen::VectorXd& m_p, double beta_p,
                          const Eigen::MatrixXd& E_T) {
  // Evaluated at m_q: the quadratic term of q vanishes.
  const double d = static_cast<double>(m_q.size());
  const Eigen::VectorXd dm = m_q - m_p;
  const double ratio = 0.5 * d * std::log(beta_q / beta_p) +
                       0.5 * beta_p * dm.dot(E_T * dm);
  return -kl_gaussian_mean(m_q, beta_q, m_p, beta_p, E_T) + ratio;
}

}  // namespace

SelectionScore dic(const Dataset& data, const VbState& state,
                   const HyperPriors& priors) {
  SelectionScore score;
  const int G = state.G;
  const int d = state.d;

  score.posterior_loglik = posterior_loglik(data, state.point_estimate());

  double p_d = 0.0;

  // Dirichlet factor over the mixing proportions.
  {
    const Eigen::VectorXd a0 = Eigen::VectorXd::Constant(G, priors.alpha0);
    const Eigen::VectorXd rho = state.alpha / state.alpha.sum();
    p_d += -kl_dirichlet(state.alpha, a0) + log_dirichlet_pdf(rho, state.alpha) -
           log_dirichlet_pdf(rho, a0);
  }

  // Gaussian mean factors.
  for (int g = 0; g < G; ++g)
    p_d += gaussian_mean_term(state.m.row(g).transpose(), state.beta(g), priors.m0,
                              priors.beta0, state.E_T[g]);

  const GammaBlock vol0{priors.a0, priors.b0};
  auto diag_prior = [&priors](int k) {
    return GammaBlock{priors.ak0(k), priors.bk0(k)};
  };
  const WishartBlock wish0{priors.wishart_df0, priors.wishart_scale0};

  switch (state.model) {
    case ModelId::EII:
      p_d += gamma_term(state.vol, vol0);
      break;
    case ModelId::VII:
      for (int g = 0; g < G; ++g) p_d += gamma_term(state.vol_g[g], vol0);
      break;
    case ModelId::EEI:
      for (int k = 0; k < d; ++k) p_d += gamma_term(state.diag_k[k], diag_prior(k));
      break;
    case ModelId::VEI:
      for (int g = 0; g < G; ++g) p_d += gamma_term(state.vol_g[g], vol0);
      for (int k = 0; k < d; ++k) p_d += gamma_term(state.diag_k[k], diag_prior(k));
      break;
    case ModelId::EVI:
      p_d += gamma_term(state.vol, vol0);
      for (int g = 0; g < G; ++g)
        for (int k = 0; k < d; ++k)
          p_d += gamma_term(state.shape_gk[g][k], diag_prior(k));
      break;
    case ModelId::VVI:
      for (int g = 0; g < G; ++g) {
        p_d += gamma_term(state.vol_g[g], vol0);
        for (int k = 0; k < d; ++k)
          p_d += gamma_term(state.shape_gk[g][k], diag_prior(k));
      }
      break;
    case ModelId::EEE:
      p_d += wishart_term(state.wishart, wish0);
      break;
    case ModelId::VEE:
      for (int g = 0; g < G; ++g) p_d += gamma_term(state.vol_g[g], vol0);
      p_d += wishart_term(state.wishart, wish0);
      break;
    case ModelId::EEV:
      for (int k = 0; k < d; ++k) p_d += gamma_term(state.diag_k[k], diag_prior(k));
      for (int g = 0; g < G; ++g)
        score.omitted_kl_terms.push_back("orientation D[" + std::to_string(g) + "]");
      break;
    case ModelId::VEV:
      for (int g = 0; g < G; ++g) p_d += gamma_term(state.vol_g[g], vol0);
      for (int k = 0; k < d; ++k) p_d += gamma_term(state.diag_k[k], diag_prior(k));
      for (int g = 0; g < G; ++g)
        score.omitted_kl_terms.push_back("orientation D[" + std::to_string(g) + "]");
      break;
    case ModelId::EVV:
      p_d += gamma_term(state.vol, vol0);
      for (int g = 0; g < G; ++g) p_d += wishart_term(state.wishart_g[g], wish0);
      break;
    case ModelId::VVV:
      for (int g = 0; g < G; ++g) p_d += wishart_term(state.wishart_g[g], wish0);
      break;
  }

  score.p_d = p_d;
  score.dic = -2.0 * score.posterior_loglik + 2.0 * p_d;

  const double n = static_cast<double>(data.n());
  const int params =
      (G - 1) + G * d + free_covariance_params(state.model, G, d);
  score.bic = 2.0 * score.posterior_loglik - params * std::log(n);
  return score;
}

ModelId select_model(const std::map<ModelId, SelectionScore>& scores, int G, int d) {
  if (scores.empty()) throw std::invalid_argument("select_model: no scores");
  const ModelId* best = nullptr;
  for (const auto& [model, score] : scores) {
    if (!best) {
      best = &model;
      continue;
    }
    const double cur = scores.at(*best).dic;
    if (score.dic < cur) {
      best = &model;
    } else if (score.dic == cur) {
      const int pc = free_covariance_params(model, G, d);
      const int pb = free_covariance_params(*best, G, d);
      if (pc < pb || (pc == pb && to_string(model) < to_string(*best)))
        best = &model;
    }
  }
  return *best;
}

}  // namespace gpcm
