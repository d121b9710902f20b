#include "gpcm/stiefel.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "gpcm/density.hpp"

namespace gpcm {

namespace {

constexpr double kPi = std::numbers::pi;

// Generalized von Mises log-density on one circle branch:
//   k1 cos(t) + k2 sin(t) + k3 cos(2t) + k4 sin(2t).
struct BranchCoeffs {
  double k1 = 0.0, k2 = 0.0;
};

double drift_from_identity(const Eigen::MatrixXd& D) {
  const Eigen::Index d = D.rows();
  return (D.transpose() * D - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd reorthonormalize(const Eigen::MatrixXd& D) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(D);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < D.cols(); ++k)
    if (R(k, k) < 0.0) Q.col(k) = -Q.col(k);
  return Q;
}

// Exact rejection sampler for the O(2) pair conditional. Both branches
// share the order-2 terms (k3, k4); the envelope is the amplitude bound of
// the two sinusoid pairs.
void sample_pair(const Eigen::VectorXd& P, const Eigen::MatrixXd& An,
                 const Eigen::MatrixXd& Cn, int r, int s, Rng& rng,
                 Eigen::Matrix2d& Y) {
  const double dp = P(r) - P(s);
  const double a11 = An(0, 0), a22 = An(1, 1);
  const double a12 = 0.5 * (An(0, 1) + An(1, 0));
  const double k3 = 0.5 * dp * (a11 - a22);
  const double k4 = dp * a12;

  const BranchCoeffs rot{Cn(0, 0) + Cn(1, 1), Cn(1, 0) - Cn(0, 1)};
  const BranchCoeffs refl{Cn(0, 0) - Cn(1, 1), Cn(1, 0) + Cn(0, 1)};

  const double log_env = std::max(std::hypot(rot.k1, rot.k2), std::hypot(refl.k1, refl.k2)) +
                         std::hypot(k3, k4);

  for (int tries = 0; tries < 1000000; ++tries) {
    const bool rotation = rng.uniform() < 0.5;
    const double t = (2.0 * rng.uniform() - 1.0) * kPi;
    const BranchCoeffs& bc = rotation ? rot : refl;
    const double logf = bc.k1 * std::cos(t) + bc.k2 * std::sin(t) +
                        k3 * std::cos(2.0 * t) + k4 * std::sin(2.0 * t);
    if (std::log(1.0 - rng.uniform()) <= logf - log_env) {
      const double c = std::cos(t), sn = std::sin(t);
      if (rotation)
        Y << c, -sn, sn, c;
      else
        Y << c, sn, sn, -c;
      return;
    }
  }
  throw std::runtime_error("bmf_gibbs_sample: pair rejection sampler stalled");
}

}  // namespace

void BmfParams::validate() const {
  const Eigen::Index d = Q.rows();
  if (Q.cols() != d || R.rows() != d || R.cols() != d || P.size() != d)
    throw std::invalid_argument("BmfParams: inconsistent dimensions");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, Q.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("BmfParams: Q must be symmetric");
}

void McConfig::validate() const {
  if (n_samples < 1 || burn_in < 1 || thin < 1 || max_restarts < 1)
    throw std::invalid_argument("McConfig: all counts must be >= 1");
}

Eigen::MatrixXd random_orthogonal(int d, Rng& rng) {
  Eigen::MatrixXd A(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) A(r, c) = rng.gaussian();
  return reorthonormalize(A);
}

Eigen::MatrixXd bmf_gibbs_sample(const BmfParams& params, Eigen::MatrixXd init,
                                 int steps, Rng& rng) {
  params.validate();
  const int d = static_cast<int>(params.Q.rows());
  if (init.rows() != d || init.cols() != d)
    throw std::invalid_argument("bmf_gibbs_sample: init has wrong size");
  if (drift_from_identity(init) > 1e-10)
    throw std::invalid_argument("bmf_gibbs_sample: init is not orthogonal");
  if (steps < 0) throw std::invalid_argument("bmf_gibbs_sample: negative step count");

  if (d == 1) {
    // O(1) = {+1, -1}; the quadratic term is constant.
    const double r = params.R(0, 0);
    const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * r));
    init(0, 0) = rng.uniform() < p_plus ? 1.0 : -1.0;
    return init;
  }

  Eigen::Matrix2d Y;
  for (int step = 0; step < steps; ++step) {
    // One sweep = d random column pairs (the square-matrix analogue of a
    // column-at-a-time scan).
    for (int u = 0; u < d; ++u) {
      const int r = static_cast<int>(rng.integer(d));
      int s = static_cast<int>(rng.integer(d - 1));
      if (s >= r) ++s;
      // For an orthogonal matrix the null space of the remaining columns is
      // the span of columns r and s themselves.
      Eigen::MatrixXd N(d, 2);
      N.col(0) = init.col(r);
      N.col(1) = init.col(s);
      const Eigen::MatrixXd An = N.transpose() * params.Q * N;
      Eigen::MatrixXd Cn(2, 2);
      Cn.col(0) = N.transpose() * params.R.col(r);
      Cn.col(1) = N.transpose() * params.R.col(s);
      Eigen::VectorXd p2(2);
      sample_pair(params.P, An, Cn, r, s, rng, Y);
      init.col(r) = N * Y.col(0);
      init.col(s) = N * Y.col(1);
    }

    double drift = drift_from_identity(init);
    if (drift > 1e-8) {
      std::cerr << "bmf_gibbs_sample: orthonormality drift " << drift
                << ", re-orthonormalizing\n";
      init = reorthonormalize(init);
      if (drift_from_identity(init) > 1e-8)
        throw std::runtime_error("bmf_gibbs_sample: cannot restore orthonormality");
    } else if (drift > 1e-12) {
      init = reorthonormalize(init);
    }
  }
  return init;
}

std::vector<Eigen::MatrixXd> bmf_sample_set(const BmfParams& params,
                                            const McConfig& cfg, Rng& rng) {
  cfg.validate();
  const int d = static_cast<int>(params.Q.rows());
  Eigen::MatrixXd D = random_orthogonal(d, rng);
  D = bmf_gibbs_sample(params, D, cfg.burn_in, rng);
  std::vector<Eigen::MatrixXd> set;
  set.reserve(cfg.n_samples);
  for (int s = 0; s < cfg.n_samples; ++s) {
    D = bmf_gibbs_sample(params, D, cfg.thin, rng);
    set.push_back(D);
  }
  return set;
}

McExpectations mc_precision_expectations(const std::vector<Eigen::MatrixXd>& samples,
                                         const Eigen::VectorXd& tau_diag) {
  if (samples.empty())
    throw std::invalid_argument("mc_precision_expectations: empty sample set");
  if ((tau_diag.array() <= 0.0).any())
    throw std::invalid_argument("mc_precision_expectations: tau must be positive");
  const Eigen::Index d = tau_diag.size();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
  for (const Eigen::MatrixXd& D : samples)
    acc += D * tau_diag.asDiagonal() * D.transpose();
  acc /= static_cast<double>(samples.size());
  McExpectations out;
  out.E_T = 0.5 * (acc + acc.transpose());
  // |D diag(tau) D'| = prod(tau) for every orthogonal D, so the log
  // determinant carries no Monte Carlo noise.
  out.E_logdet = tau_diag.array().log().sum();
  return out;
}

namespace {

Eigen::VectorXd eigenframe_tau(const VbState& state, int g) {
  if (state.model == ModelId::EEV) {
    Eigen::VectorXd tau(state.d);
    for (int k = 0; k < state.d; ++k) tau(k) = state.diag_k[k].mean();
    return tau;
  }
  // VEV: tau_g = E[lambda_g^{-1}] * normalized shape.
  return state.vol_g[g].mean() * state.shape_norm;
}

}  // namespace

BmfParams orientation_posterior(const VbState& state, const Dataset& data,
                                const HyperPriors& priors, int g) {
  if (!uses_orientation_sampler(state.model))
    throw std::invalid_argument("orientation_posterior: model has no orientation factor");
  const Eigen::VectorXd z = state.Z.col(g);
  const Eigen::VectorXd mg = state.m.row(g).transpose();
  const Eigen::VectorXd zy = data.Y.transpose() * z;
  const double ng = z.sum();
  // Responsibility-weighted scatter about the posterior mean plus the prior
  // mean pull, halved to match the exponent of the conditional density.
  Eigen::MatrixXd scatter = data.Y.transpose() * z.asDiagonal() * data.Y;
  scatter.noalias() -= zy * mg.transpose();
  scatter.noalias() -= mg * zy.transpose();
  scatter.noalias() += ng * mg * mg.transpose();
  const Eigen::VectorXd dm = mg - priors.m0;
  scatter.noalias() += priors.beta0 * dm * dm.transpose();

  BmfParams p;
  p.Q = -0.25 * (scatter + scatter.transpose());
  p.P = eigenframe_tau(state, g);
  p.R = priors.C0;
  return p;
}

namespace {

// Draws candidate sample sets for all components and the E[T_g] they imply.
void propose_sets(const VbState& state, const Dataset& data,
                  const HyperPriors& priors, const McConfig& cfg, Rng& rng,
                  std::vector<std::vector<Eigen::MatrixXd>>& sets,
                  std::vector<Eigen::MatrixXd>& E_T) {
  sets.resize(state.G);
  E_T.resize(state.G);
  for (int g = 0; g < state.G; ++g) {
    const BmfParams params = orientation_posterior(state, data, priors, g);
    sets[g] = bmf_sample_set(params, cfg, rng);
    E_T[g] = mc_precision_expectations(sets[g], params.P).E_T;
  }
}

}  // namespace

void draw_orientation_sets(VbState& state, const Dataset& data,
                           const HyperPriors& priors, const McConfig& cfg,
                           Rng& rng) {
  std::vector<std::vector<Eigen::MatrixXd>> sets;
  std::vector<Eigen::MatrixXd> E_T;
  propose_sets(state, data, priors, cfg, rng, sets, E_T);
  state.orient = std::move(sets);
  state.E_T = std::move(E_T);
}

std::optional<double> guarded_orientation_update(VbState& state, const Dataset& data,
                                                 const HyperPriors& priors,
                                                 const McConfig& cfg, Rng& rng,
                                                 double last_loglik) {
  cfg.validate();
  for (int restart = 0; restart < cfg.max_restarts; ++restart) {
    std::vector<std::vector<Eigen::MatrixXd>> sets;
    std::vector<Eigen::MatrixXd> E_T;
    propose_sets(state, data, priors, cfg, rng, sets, E_T);

    MixturePoint candidate = state.point_estimate();
    candidate.T = E_T;
    const double loglik = mixture_log_likelihood(data, candidate);
    if (loglik > last_loglik) {
      state.orient = std::move(sets);
      state.E_T = std::move(E_T);
      return loglik;
    }
  }
  return std::nullopt;
}

}  // namespace gpcm
