#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "gpcm/model_id.hpp"
#include "gpcm/types.hpp"

namespace gpcm {

// Gamma factor in chi-square bookkeeping: density ~ x^{a/2-1} exp(-b x/2).
struct GammaBlock {
  double a = 0.0;
  double b = 0.0;
  double mean() const { return a / b; }
  double log_mean() const;  // E[log x] = Psi(a/2) - log(b/2)
};

// Wishart factor with degrees of freedom and inverse scale W:
// density ~ |T|^{(df-d-1)/2} exp(-tr(W T)/2).
struct WishartBlock {
  double df = 0.0;
  Eigen::MatrixXd inv_scale;
  Eigen::MatrixXd mean() const;   // df * W^{-1}
  double expected_logdet() const;
};

// Rescales a positive vector of expected values so its product is one.
// Returns (det-one vector, extracted scalar c = geometric mean).
std::pair<Eigen::VectorXd, double> normalize_shape(const Eigen::VectorXd& expected_diag);

// Full variational state for one fit. Only the precision members used by
// the model are populated; the expectation cache is always valid between
// sweeps.
struct VbState {
  ModelId model = ModelId::EII;
  int n = 0;
  int d = 0;
  int G = 0;

  Eigen::MatrixXd Z;       // n x G responsibilities, rows on the simplex
  Eigen::VectorXd alpha;   // Dirichlet parameters
  Eigen::VectorXd beta;    // mean-precision scales
  Eigen::MatrixXd m;       // G x d posterior means (rows)

  // Precision factors.
  GammaBlock vol;                               // shared volume
  std::vector<GammaBlock> vol_g;                // per-component volume
  std::vector<GammaBlock> diag_k;               // shared per-dimension gammas
  std::vector<std::vector<GammaBlock>> shape_gk;  // per-component per-dimension
  WishartBlock wishart;                         // shared full factor
  std::vector<WishartBlock> wishart_g;          // per-component full factor

  // Determinant-one shape expectations (models with a c A^{-1} factor).
  Eigen::VectorXd shape_norm;                   // shared
  std::vector<Eigen::VectorXd> shape_norm_g;    // per component

  // Orientation Monte Carlo sample sets (EEV / VEV).
  std::vector<std::vector<Eigen::MatrixXd>> orient;

  // Expectation cache.
  std::vector<Eigen::MatrixXd> E_T;
  Eigen::VectorXd E_logdet_T;

  // Rows with known labels keep one-hot responsibilities.
  Eigen::VectorXi frozen;        // length n, 0/1
  int pinned_components = 0;     // leading components exempt from pruning

  Eigen::VectorXd counts() const { return Z.colwise().sum(); }

  // Point estimates (rho = alpha / sum alpha, mu = m, T = E[T]).
  MixturePoint point_estimate() const;
};

}  // namespace gpcm
