#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "gpcm/priors.hpp"
#include "gpcm/rng.hpp"
#include "gpcm/types.hpp"
#include "gpcm/vb_state.hpp"

namespace gpcm {

// Parameters of a matrix Bingham-von Mises-Fisher density on the square
// orthogonal group, p(D) ~ exp(tr(Q D P D' + R D')) with Q symmetric and
// P diagonal.
struct BmfParams {
  Eigen::MatrixXd Q;
  Eigen::VectorXd P;
  Eigen::MatrixXd R;

  void validate() const;
};

// Monte Carlo configuration for the orientation factors.
struct McConfig {
  int n_samples = 100;   // retained draws per sample set
  int burn_in = 50;      // discarded leading sweeps
  int thin = 1;          // sweeps between retained draws
  int max_restarts = 50; // random restarts before giving up an update

  void validate() const;
};

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
// R-diagonal signs fixed).
Eigen::MatrixXd random_orthogonal(int d, Rng& rng);

// Runs `steps` Gibbs sweeps from `init` and returns the resulting matrix.
// One sweep updates d randomly chosen column pairs; the pair conditional on
// O(2) is sampled exactly by rejection from its two circle branches
// (rotations and reflections), following the column-pair construction of
// Hoff (2009) for square matrices. Columns stay orthonormal within 1e-10.
Eigen::MatrixXd bmf_gibbs_sample(const BmfParams& params, Eigen::MatrixXd init,
                                 int steps, Rng& rng);

// Burn-in plus n_samples retained draws from one chain started at a fresh
// Haar-random matrix.
std::vector<Eigen::MatrixXd> bmf_sample_set(const BmfParams& params,
                                            const McConfig& cfg, Rng& rng);

struct McExpectations {
  Eigen::MatrixXd E_T;   // mean over samples of D diag(tau) D'
  double E_logdet = 0.0; // sum_k log tau_k (exact for every orthogonal D)
};

McExpectations mc_precision_expectations(const std::vector<Eigen::MatrixXd>& samples,
                                         const Eigen::VectorXd& tau_diag);

// Assembles the orientation posterior parameters for component g of an
// EEV/VEV state: Q = -(scatter about m_g + prior mean pull)/2, P the
// current expected diagonal precision in the eigenframe, R = C0.
BmfParams orientation_posterior(const VbState& state, const Dataset& data,
                                const HyperPriors& priors, int g);

// Draws fresh orientation sample sets for every component and installs them
// together with the implied E[T_g] without any acceptance check. Used to
// seed a sampler-model state.
void draw_orientation_sets(VbState& state, const Dataset& data,
                           const HyperPriors& priors, const McConfig& cfg,
                           Rng& rng);

// One guarded orientation update: proposes fresh sample sets for all
// components, recomputes E[T_g] and the posterior log-likelihood, and
// accepts only if the likelihood exceeds `last_loglik`. Retries with new
// random starts up to cfg.max_restarts; returns the accepted log-likelihood
// or std::nullopt when every restart failed (the caller treats that as
// convergence to the maximum posterior likelihood).
std::optional<double> guarded_orientation_update(VbState& state, const Dataset& data,
                                                 const HyperPriors& priors,
                                                 const McConfig& cfg, Rng& rng,
                                                 double last_loglik);

}  // namespace gpcm
