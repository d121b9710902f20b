#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "gpcm/model_id.hpp"
#include "gpcm/priors.hpp"
#include "gpcm/types.hpp"
#include "gpcm/vb_state.hpp"

namespace gpcm {

// Model selection summary for one converged fit. Both criteria follow the
// larger-posterior-likelihood-is-better orientation: DIC is minimized, BIC
// (= 2 loglik - params log n) is maximized.
struct SelectionScore {
  double dic = 0.0;
  double p_d = 0.0;
  double posterior_loglik = 0.0;
  double bic = 0.0;
  std::vector<std::string> omitted_kl_terms;  // factors absent from p_D
  bool from_converged_state = true;
};

// Mixture log-likelihood at the posterior point estimates.
double posterior_loglik(const Dataset& data, const MixturePoint& point);

// Deviance information criterion, DIC = -2 loglik + 2 p_D, with
//   p_D = sum over tractable variational factors of
//         ( -KL(q || p) + log q(theta_mean) - log p(theta_mean) ).
// Closed forms cover the Dirichlet, Gaussian-mean, gamma, and Wishart
// factors; the orientation factors of EEV/VEV have no tractable normalizing
// constant and are listed in omitted_kl_terms instead.
SelectionScore dic(const Dataset& data, const VbState& state,
                   const HyperPriors& priors);

// Minimum-DIC model; ties break toward fewer free covariance parameters and
// then lexicographic name. G and d give the tie-break parameter counts.
ModelId select_model(const std::map<ModelId, SelectionScore>& scores, int G, int d);

// Closed-form KL divergences between the conjugate factor families, exposed
// for the selection machinery and its tests.
double kl_dirichlet(const Eigen::VectorXd& alpha_q, const Eigen::VectorXd& alpha_p);
double kl_gamma(const GammaBlock& q, const GammaBlock& p);
double kl_wishart(const WishartBlock& q, const WishartBlock& p);
// Mean factors share the component precision; both densities are evaluated
// with T fixed at its posterior expectation.
double kl_gaussian_mean(const Eigen::VectorXd& m_q, double beta_q,
                        const Eigen::VectorXd& m_p, double beta_p,
                        const Eigen::MatrixXd& E_T);

// Log densities used for the p_D ratio terms.
double log_dirichlet_pdf(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha);
double log_gamma_pdf(double x, const GammaBlock& g);
double log_wishart_pdf(const Eigen::MatrixXd& T, const WishartBlock& w);

}  // namespace gpcm
