#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "gpcm/selection.hpp"

namespace gpcm {

// Converged posterior summary of one variational fit.
struct FitReport {
  std::string model;
  std::uint64_t seed = 0;
  std::string priors_digest;

  int G = 0;
  bool converged = false;
  int iterations = 0;

  Eigen::VectorXd rho;                    // mixing proportions
  std::vector<Eigen::VectorXd> mu;        // component means
  std::vector<Eigen::MatrixXd> T;         // expected precisions
  std::vector<Eigen::MatrixXd> Sigma;     // inverses of T, for reporting
  Eigen::VectorXd lambda;                 // spherical volumes (EII/VII only)

  std::vector<int> labels;                // MAP classification, 1-based
  std::vector<double> loglik_trace;
  SelectionScore score;

  // JSON document with scalars in decimal and matrices as row-major arrays.
  std::string to_json() const;
};

}  // namespace gpcm
