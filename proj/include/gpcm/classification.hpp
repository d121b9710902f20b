#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "gpcm/types.hpp"

namespace gpcm {

// Hard partition; entries are 1-based class indices.
using Partition = std::vector<int>;

// Cross-tabulation of two partitions, rows = truth, columns = predicted.
struct ConfusionTable {
  Eigen::MatrixXi counts;
  std::vector<int> row_classes;
  std::vector<int> col_classes;

  std::string to_text() const;
  std::string to_csv() const;
};

// MAP labels from a row-stochastic responsibility matrix; ties break to the
// lowest component index.
Partition map_labels(const Eigen::MatrixXd& Z);

// Adjusted Rand index of Hubert & Arabie (1985). 1 for identical partitions
// up to relabeling, about 0 under chance. When both partitions are a single
// cluster the chance-corrected denominator is degenerate and the index is
// defined as 0. Requires equal lengths and n >= 2.
double adjusted_rand_index(const Partition& a, const Partition& b);

ConfusionTable confusion(const Partition& truth, const Partition& predicted);

// Semi-supervised likelihood: complete-data terms for the rows with known
// labels, mixture terms for the rest.
double classification_loglik(const Dataset& data, const MixturePoint& point);

}  // namespace gpcm
