#include "gpcm/simulate.hpp"

#include <stdexcept>

#include "gpcm/rng.hpp"

namespace gpcm {

void SimSpec::validate() const {
  if (components.empty()) throw std::invalid_argument("SimSpec: no components");
  const Eigen::Index d = components.front().mu.size();
  for (const SimComponent& c : components) {
    if (c.n < 1) throw std::invalid_argument("SimSpec: component size must be >= 1");
    if (c.mu.size() != d || c.sigma.rows() != d || c.sigma.cols() != d)
      throw std::invalid_argument("SimSpec: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(c.sigma);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("SimSpec: covariance is not SPD");
  }
}

Dataset generate(const SimSpec& spec) {
  spec.validate();
  const Eigen::Index d = spec.components.front().mu.size();
  Eigen::Index total = 0;
  for (const SimComponent& c : spec.components) total += c.n;

  Dataset out;
  out.Y.resize(total, d);
  Eigen::VectorXi truth(total);
  Rng rng(spec.seed);

  Eigen::Index row = 0;
  int label = 1;
  for (const SimComponent& c : spec.components) {
    const Eigen::MatrixXd L =
        Eigen::LLT<Eigen::MatrixXd>(c.sigma).matrixL();
    Eigen::MatrixXd z(c.n, d);
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index i = 0; i < c.n; ++i) z(i, k) = rng.gaussian();
    out.Y.middleRows(row, c.n) =
        (z * L.transpose()).rowwise() + c.mu.transpose();
    truth.segment(row, c.n).setConstant(label);
    row += c.n;
    ++label;
  }
  out.truth = truth;
  return out;
}

Dataset generate_sim1(std::uint64_t seed) {
  SimSpec spec;
  spec.seed = seed;
  const auto spherical = [](int n, double x, double y, double lambda) {
    SimComponent c;
    c.n = n;
    c.mu = Eigen::Vector2d(x, y);
    c.sigma = lambda * Eigen::Matrix2d::Identity();
    return c;
  };
  spec.components = {spherical(100, -2.0, 2.0, 0.5), spherical(150, 8.0, 0.0, 1.2),
                     spherical(75, -7.0, -7.0, 2.5)};
  return generate(spec);
}

Eigen::MatrixXd sim2_sigma() {
  Eigen::Matrix3d sigma;
  sigma << 0.50, 0.35, 0.25,
           0.35, 1.00, 0.45,
           0.25, 0.45, 1.20;
  return sigma;
}

Dataset generate_sim2(std::uint64_t seed) {
  SimSpec spec;
  spec.seed = seed;
  const Eigen::MatrixXd sigma = sim2_sigma();
  const auto comp = [&sigma](int n, double x, double y, double z) {
    SimComponent c;
    c.n = n;
    c.mu = Eigen::Vector3d(x, y, z);
    c.sigma = sigma;
    return c;
  };
  spec.components = {comp(150, -2.0, -2.0, -2.0), comp(100, 4.0, 0.0, 0.0),
                     comp(75, -5.0, 0.0, 2.0)};
  return generate(spec);
}

}  // namespace gpcm
