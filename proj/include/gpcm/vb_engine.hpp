#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "gpcm/convergence.hpp"
#include "gpcm/fit_report.hpp"
#include "gpcm/priors.hpp"
#include "gpcm/rng.hpp"
#include "gpcm/stiefel.hpp"
#include "gpcm/types.hpp"
#include "gpcm/vb_state.hpp"

namespace gpcm {

enum class InitStrategy { RandomResponsibilities, KMeansLabels, ProvidedLabels };

struct InitConfig {
  int G_max = 10;
  InitStrategy strategy = InitStrategy::RandomResponsibilities;
  std::uint64_t seed = 0;
  double prune_threshold = 2.0;

  void validate() const;
};

InitStrategy parse_init_strategy(const std::string& name);

// Lloyd's algorithm with k-means++ seeding; returns 1-based labels. Empty
// clusters are reseeded at the point farthest from its center.
std::vector<int> kmeans_labels(const Eigen::MatrixXd& Y, int k, Rng& rng,
                               int max_iters = 50);

// Coordinate-ascent variational estimation of one eigen-decomposed Gaussian
// mixture. A sweep runs responsibilities -> mean block -> precision block ->
// expectations -> pruning; EEV/VEV interpose the guarded Monte Carlo
// orientation update between the expectation refresh and pruning, and only
// accepted log-likelihood values enter the trace.
class VbEngine {
public:
  VbEngine(const Dataset& data, ModelId model, const HyperPriors& priors,
           const InitConfig& init, const ConvergenceConfig& conv = {},
           const McConfig& mc = {});

  // One coordinate update each. Exposed so the sweep pieces can be driven
  // and inspected individually.
  void update_responsibilities();
  void update_mean_block();
  void update_precision_block();
  void refresh_expectations();
  // Removes components whose responsibility mass is at or below the
  // threshold; returns how many were removed.
  int prune_components();

  double posterior_loglik() const;

  FitReport fit();

  VbState& state() { return state_; }
  const VbState& state() const { return state_; }
  const Dataset& data() const { return data_; }

private:
  void initialize();
  Eigen::MatrixXd initial_responsibilities();

  // S_g = sum_i z_ig y_i y_i' + beta0 m0 m0' - beta_g m_g m_g' and its
  // diagonal / trace specializations.
  Eigen::MatrixXd component_scatter(int g) const;
  Eigen::VectorXd component_scatter_diag(int g) const;
  // Average of diag(D' S_g D) over the component's orientation samples.
  Eigen::VectorXd rotated_scatter_diag(int g) const;

  Eigen::MatrixXd ensure_spd(Eigen::MatrixXd W, const char* what) const;

  const Dataset& data_;
  ModelId model_;
  HyperPriors priors_;
  InitConfig init_;
  ConvergenceConfig conv_;
  McConfig mc_;
  VbState state_;
  Rng rng_;
};

// Operation-level wrappers.
VbState init_state(const Dataset& data, ModelId model, const InitConfig& cfg,
                   const HyperPriors& priors, const McConfig& mc = {});
FitReport fit(const Dataset& data, ModelId model, const HyperPriors& priors,
              const InitConfig& init, const ConvergenceConfig& conv = {},
              const McConfig& mc = {});

}  // namespace gpcm
