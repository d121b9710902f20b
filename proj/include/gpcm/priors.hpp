#pragma once

#include <Eigen/Dense>

#include <string>

#include "gpcm/config.hpp"
#include "gpcm/model_id.hpp"
#include "gpcm/types.hpp"

namespace gpcm {

// Prior hyperparameters for the conjugate blocks.
//
// Gamma pairs are kept in chi-square style bookkeeping throughout: a factor
// x with parameters (a, b) has density proportional to
//   x^{a/2 - 1} exp(-b x / 2),
// i.e. shape a/2 and rate b/2, so E[x] = a/b and E[log x] = Psi(a/2) - log(b/2).
// Posterior updates then add plain counts to `a` and plain scatter to `b`.
//
// The Wishart factor is parameterized by degrees of freedom and INVERSE
// scale W: density proportional to |T|^{(df-d-1)/2} exp(-tr(W T)/2), so
// E[T] = df * W^{-1}.
struct HyperPriors {
  double alpha0 = 1.0;        // Dirichlet weight per component
  double beta0 = 0.01;        // mean-precision scale
  Eigen::VectorXd m0;         // prior mean (shared across components)

  double a0 = 2.0, b0 = 2.0;  // volume gamma (lambda^{-1} factors)
  Eigen::VectorXd ak0, bk0;   // per-dimension gammas (diagonal/shape factors)

  double wishart_df0 = 0.0;   // >= d
  Eigen::MatrixXd wishart_scale0;  // inverse scale

  Eigen::MatrixXd C0;         // von Mises-Fisher concentration (0 = uniform)

  // Checks positivity/SPD requirements for the fields the model uses.
  void validate(ModelId model, Eigen::Index d) const;

  KeyValueConfig to_config() const;
  static HyperPriors from_config(const KeyValueConfig& cfg);

  // Short stable digest of the serialized priors, recorded in fit reports.
  std::string digest() const;
};

// Weakly informative, data-scaled defaults. Gamma priors carry unit shape
// with prior mean matched to the corresponding moment of the pooled sample
// precision; the Wishart prior has d+2 degrees of freedom with prior mean
// equal to the pooled sample precision; the orientation prior is uniform.
// Throws std::invalid_argument naming the column when a data column has
// (numerically) zero variance.
HyperPriors default_priors(const Dataset& data, ModelId model, int G_max);

}  // namespace gpcm
