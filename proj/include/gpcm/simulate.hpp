#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "gpcm/types.hpp"

namespace gpcm {

// One mixture component of a simulation design.
struct SimComponent {
  int n = 0;
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
};

struct SimSpec {
  std::vector<SimComponent> components;
  std::uint64_t seed = 0;

  void validate() const;
};

// Draws the dataset for a design. Components are emitted in block order
// with 1-based truth labels; each component's standard-normal block is
// filled column by column from a single stream, so output is a pure
// function of the seed.
Dataset generate(const SimSpec& spec);

// Three spherical components in two dimensions:
// (n, mu, lambda) = (100, (-2,2), 0.5), (150, (8,0), 1.2), (75, (-7,-7), 2.5).
Dataset generate_sim1(std::uint64_t seed);

// Three components in three dimensions sharing one full covariance:
// means (-2,-2,-2) x150, (4,0,0) x100, (-5,0,2) x75.
Dataset generate_sim2(std::uint64_t seed);

// The covariance shared by the second design.
Eigen::MatrixXd sim2_sigma();

}  // namespace gpcm
