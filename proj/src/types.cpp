#include "gpcm/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpcm {

Eigen::Index Dataset::known_count() const {
  if (!labels) return 0;
  return (labels->array() > 0).count();
}

int Dataset::known_classes() const {
  if (!labels) return 0;
  int g = 0;
  for (Eigen::Index i = 0; i < labels->size(); ++i) g = std::max(g, (*labels)(i));
  return g;
}

void Dataset::validate() const {
  if (Y.rows() < 1 || Y.cols() < 1)
    throw std::invalid_argument("Dataset: needs at least one row and one column");
  if (!Y.allFinite()) throw std::invalid_argument("Dataset: non-finite entries");
  if (labels) {
    if (labels->size() != Y.rows())
      throw std::invalid_argument("Dataset: label vector length mismatch");
    if ((labels->array() < 0).any())
      throw std::invalid_argument("Dataset: labels must be 0 (unknown) or positive");
  }
  if (truth && truth->size() != Y.rows())
    throw std::invalid_argument("Dataset: truth vector length mismatch");
}

Dataset Dataset::as_clustering() const {
  Dataset out;
  out.Y = Y;
  out.truth = truth;
  if (labels && (labels->array() > 0).all()) out.truth = labels;
  return out;
}

void MixturePoint::validate() const {
  const int G = components();
  if (G < 1) throw std::invalid_argument("MixturePoint: empty mixture");
  if ((rho.array() <= 0.0).any())
    throw std::invalid_argument("MixturePoint: mixing proportions must be positive");
  if (std::abs(rho.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("MixturePoint: mixing proportions must sum to 1");
  if (static_cast<int>(mu.size()) != G || static_cast<int>(T.size()) != G)
    throw std::invalid_argument("MixturePoint: component count mismatch");
  for (int g = 0; g < G; ++g) {
    if (T[g].rows() != T[g].cols() || T[g].rows() != mu[g].size())
      throw std::invalid_argument("MixturePoint: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (T[g] + T[g].transpose()));
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("MixturePoint: precision matrix is not SPD");
  }
}

void CovDecomposition::validate() const {
  const int G = components();
  if (G < 1) throw std::invalid_argument("CovDecomposition: empty");
  if (static_cast<int>(shape.size()) != G ||
      static_cast<int>(orientation.size()) != G)
    throw std::invalid_argument("CovDecomposition: component count mismatch");
  for (int g = 0; g < G; ++g) {
    if (!(lambda(g) > 0.0))
      throw std::invalid_argument("CovDecomposition: volume must be positive");
    if ((shape[g].array() <= 0.0).any())
      throw std::invalid_argument("CovDecomposition: shape entries must be positive");
    if (std::abs(shape[g].prod() - 1.0) > 1e-10)
      throw std::invalid_argument(
          "CovDecomposition: shape determinant must be 1 (component " +
          std::to_string(g) + ")");
    const Eigen::MatrixXd& D = orientation[g];
    const Eigen::Index d = shape[g].size();
    if (D.rows() != d || D.cols() != d)
      throw std::invalid_argument("CovDecomposition: orientation size mismatch");
    const double drift =
        (D.transpose() * D - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (drift > 1e-10)
      throw std::invalid_argument("CovDecomposition: orientation is not orthogonal");
  }
}

Eigen::MatrixXd reconstruct_sigma(const CovDecomposition& dec, int g) {
  dec.validate();
  if (g < 0 || g >= dec.components())
    throw std::invalid_argument("reconstruct_sigma: component index out of range");
  const Eigen::MatrixXd& D = dec.orientation[g];
  Eigen::MatrixXd sigma =
      dec.lambda(g) * D * dec.shape[g].asDiagonal() * D.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

}  // namespace gpcm
