#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "gpcm/model_id.hpp"

namespace gpcm {

// Observation matrix with optional label information.
//
// `labels` carries the semi-supervised classification information: entry i
// is the known 1-based class of row i, or 0 when the membership is unknown.
// `truth` is evaluation-only ground truth (e.g. from a simulation design)
// and never influences a fit.
struct Dataset {
  Eigen::MatrixXd Y;
  std::optional<Eigen::VectorXi> labels;
  std::optional<Eigen::VectorXi> truth;

  Eigen::Index n() const { return Y.rows(); }
  Eigen::Index dim() const { return Y.cols(); }

  // Number of rows with a known class.
  Eigen::Index known_count() const;
  bool classification_mode() const { return known_count() > 0; }
  // Largest known class index (0 when none).
  int known_classes() const;

  // Throws std::invalid_argument when the invariants do not hold.
  void validate() const;

  // Copy with the label column demoted to ground truth (clustering runs on
  // externally labelled data).
  Dataset as_clustering() const;
};

// Point in parameter space of a Gaussian mixture, with component precisions.
struct MixturePoint {
  Eigen::VectorXd rho;                  // G, simplex
  std::vector<Eigen::VectorXd> mu;      // G vectors of length d
  std::vector<Eigen::MatrixXd> T;       // G precision matrices, SPD

  int components() const { return static_cast<int>(rho.size()); }
  void validate() const;
};

// Eigen-decomposed covariance set: Sigma_g = lambda_g * D_g * A_g * D_g'.
// A_g is diagonal with unit determinant, D_g orthogonal (det +1 or -1).
struct CovDecomposition {
  Eigen::VectorXd lambda;                    // per-component volume
  std::vector<Eigen::VectorXd> shape;        // diag(A_g), |A_g| = 1
  std::vector<Eigen::MatrixXd> orientation;  // D_g

  int components() const { return static_cast<int>(lambda.size()); }
  void validate() const;
};

// Reconstructs Sigma_g = lambda_g D_g A_g D_g' (symmetrized).
Eigen::MatrixXd reconstruct_sigma(const CovDecomposition& dec, int g);

}  // namespace gpcm
