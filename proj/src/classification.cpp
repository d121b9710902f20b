#include "gpcm/classification.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gpcm/density.hpp"
#include "gpcm/special.hpp"

namespace gpcm {

namespace {

// Dense re-indexing of arbitrary class ids, in sorted order.
std::pair<std::vector<int>, std::vector<int>> dense_index(const Partition& p) {
  std::vector<int> classes(p);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::vector<int> idx(p.size());
  for (size_t i = 0; i < p.size(); ++i)
    idx[i] = static_cast<int>(std::lower_bound(classes.begin(), classes.end(), p[i]) -
                              classes.begin());
  return {idx, classes};
}

double choose2(double n) { return 0.5 * n * (n - 1.0); }

}  // namespace

Partition map_labels(const Eigen::MatrixXd& Z) {
  Partition labels(Z.rows());
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    int best = 0;
    for (Eigen::Index g = 1; g < Z.cols(); ++g)
      if (Z(i, g) > Z(i, best)) best = static_cast<int>(g);
    labels[i] = best + 1;
  }
  return labels;
}

double adjusted_rand_index(const Partition& a, const Partition& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("adjusted_rand_index: length mismatch");
  const size_t n = a.size();
  if (n < 2) throw std::invalid_argument("adjusted_rand_index: need n >= 2");

  const auto [ia, ca] = dense_index(a);
  const auto [ib, cb] = dense_index(b);
  const int ka = static_cast<int>(ca.size());
  const int kb = static_cast<int>(cb.size());
  if (ka == 1 && kb == 1) return 0.0;

  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(ka, kb);
  for (size_t i = 0; i < n; ++i) table(ia[i], ib[i]) += 1.0;

  double pairs_cells = 0.0;
  for (int r = 0; r < ka; ++r)
    for (int c = 0; c < kb; ++c) pairs_cells += choose2(table(r, c));
  double pairs_a = 0.0, pairs_b = 0.0;
  for (int r = 0; r < ka; ++r) pairs_a += choose2(table.row(r).sum());
  for (int c = 0; c < kb; ++c) pairs_b += choose2(table.col(c).sum());

  const double expected = pairs_a * pairs_b / choose2(static_cast<double>(n));
  const double maximum = 0.5 * (pairs_a + pairs_b);
  if (std::abs(maximum - expected) < 1e-300) return 0.0;
  return (pairs_cells - expected) / (maximum - expected);
}

ConfusionTable confusion(const Partition& truth, const Partition& predicted) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("confusion: length mismatch");
  const auto [it, ct] = dense_index(truth);
  const auto [ip, cp] = dense_index(predicted);
  ConfusionTable out;
  out.row_classes = ct;
  out.col_classes = cp;
  out.counts = Eigen::MatrixXi::Zero(static_cast<int>(ct.size()),
                                     static_cast<int>(cp.size()));
  for (size_t i = 0; i < truth.size(); ++i) out.counts(it[i], ip[i]) += 1;
  return out;
}

std::string ConfusionTable::to_text() const {
  std::ostringstream os;
  os << "truth\\pred";
  for (int c : col_classes) os << '\t' << c;
  os << '\n';
  for (Eigen::Index r = 0; r < counts.rows(); ++r) {
    os << row_classes[r];
    for (Eigen::Index c = 0; c < counts.cols(); ++c) os << '\t' << counts(r, c);
    os << '\n';
  }
  return os.str();
}

std::string ConfusionTable::to_csv() const {
  std::ostringstream os;
  os << "truth";
  for (int c : col_classes) os << ",pred_" << c;
  os << '\n';
  for (Eigen::Index r = 0; r < counts.rows(); ++r) {
    os << row_classes[r];
    for (Eigen::Index c = 0; c < counts.cols(); ++c) os << ',' << counts(r, c);
    os << '\n';
  }
  return os.str();
}

double classification_loglik(const Dataset& data, const MixturePoint& point) {
  point.validate();
  const int G = point.components();
  const Eigen::MatrixXd logphi = component_log_densities(data.Y, point);
  const Eigen::VectorXd logrho = point.rho.array().log().matrix();
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const int z = data.labels ? (*data.labels)(i) : 0;
    if (z > 0) {
      if (z > G)
        throw std::invalid_argument("classification_loglik: known label exceeds G");
      total += logrho(z - 1) + logphi(i, z - 1);
    } else {
      total += log_sum_exp(logphi.row(i).transpose() + logrho);
    }
  }
  return total;
}

}  // namespace gpcm
