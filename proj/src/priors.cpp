#include "gpcm/priors.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gpcm {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string("HyperPriors: ") + what +
                                              " must be positive");
}

void require_gamma_vectors(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                           Eigen::Index d) {
  if (a.size() != d || b.size() != d)
    throw std::invalid_argument("HyperPriors: per-dimension gamma vectors must have length d");
  if ((a.array() <= 0.0).any() || (b.array() <= 0.0).any())
    throw std::invalid_argument("HyperPriors: per-dimension gamma parameters must be positive");
}

bool needs_volume_gamma(ModelId m) {
  return m != ModelId::EEI && m != ModelId::EEE && m != ModelId::EEV &&
         m != ModelId::VVV;
}

bool needs_dimension_gammas(ModelId m) {
  return m == ModelId::EEI || m == ModelId::VEI || m == ModelId::EVI ||
         m == ModelId::VVI || m == ModelId::EEV || m == ModelId::VEV;
}

bool needs_wishart(ModelId m) {
  return m == ModelId::EEE || m == ModelId::VEE || m == ModelId::EVV ||
         m == ModelId::VVV;
}

}  // namespace

void HyperPriors::validate(ModelId model, Eigen::Index d) const {
  require_positive(alpha0, "alpha0");
  require_positive(beta0, "beta0");
  if (m0.size() != d) throw std::invalid_argument("HyperPriors: m0 must have length d");
  if (!m0.allFinite()) throw std::invalid_argument("HyperPriors: m0 must be finite");

  if (needs_volume_gamma(model)) {
    require_positive(a0, "a0");
    require_positive(b0, "b0");
  }
  if (needs_dimension_gammas(model)) require_gamma_vectors(ak0, bk0, d);
  if (needs_wishart(model)) {
    if (!(wishart_df0 >= static_cast<double>(d)))
      throw std::invalid_argument("HyperPriors: wishart_df0 must be >= d");
    if (wishart_scale0.rows() != d || wishart_scale0.cols() != d)
      throw std::invalid_argument("HyperPriors: wishart_scale0 must be d x d");
    Eigen::LLT<Eigen::MatrixXd> llt(wishart_scale0);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("HyperPriors: wishart_scale0 must be SPD");
  }
  if (uses_orientation_sampler(model)) {
    if (C0.rows() != d || C0.cols() != d)
      throw std::invalid_argument("HyperPriors: C0 must be d x d");
    if (!C0.allFinite()) throw std::invalid_argument("HyperPriors: C0 must be finite");
  }
}

KeyValueConfig HyperPriors::to_config() const {
  KeyValueConfig cfg;
  cfg.set_int("dim", m0.size());
  cfg.set_double("alpha0", alpha0);
  cfg.set_double("beta0", beta0);
  cfg.set_vector("m0", m0);
  cfg.set_double("gamma_a0", a0);
  cfg.set_double("gamma_b0", b0);
  if (ak0.size() > 0) cfg.set_vector("gamma_ak0", ak0);
  if (bk0.size() > 0) cfg.set_vector("gamma_bk0", bk0);
  if (wishart_scale0.size() > 0) {
    cfg.set_double("wishart_df0", wishart_df0);
    cfg.set_matrix("wishart_scale0", wishart_scale0);
  }
  if (C0.size() > 0) cfg.set_matrix("C0", C0);
  return cfg;
}

HyperPriors HyperPriors::from_config(const KeyValueConfig& cfg) {
  HyperPriors p;
  const auto dim = cfg.get_int("dim");
  if (!dim) throw std::runtime_error("priors config: missing 'dim'");
  const Eigen::Index d = static_cast<Eigen::Index>(*dim);
  if (auto v = cfg.get_double("alpha0")) p.alpha0 = *v;
  if (auto v = cfg.get_double("beta0")) p.beta0 = *v;
  if (auto v = cfg.get_vector("m0")) p.m0 = *v;
  if (auto v = cfg.get_double("gamma_a0")) p.a0 = *v;
  if (auto v = cfg.get_double("gamma_b0")) p.b0 = *v;
  if (auto v = cfg.get_vector("gamma_ak0")) p.ak0 = *v;
  if (auto v = cfg.get_vector("gamma_bk0")) p.bk0 = *v;
  if (auto v = cfg.get_double("wishart_df0")) p.wishart_df0 = *v;
  if (auto v = cfg.get_matrix("wishart_scale0", d, d)) p.wishart_scale0 = *v;
  if (auto v = cfg.get_matrix("C0", d, d)) p.C0 = *v;
  return p;
}

std::string HyperPriors::digest() const {
  // FNV-1a over the canonical serialized form.
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& [k, v] : to_config().entries())
    for (const std::string& s : {k, v})
      for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
      }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

HyperPriors default_priors(const Dataset& data, ModelId model, int G_max) {
  data.validate();
  if (G_max < 1) throw std::invalid_argument("default_priors: G_max must be positive");
  const Eigen::Index n = data.n();
  const Eigen::Index d = data.dim();

  const Eigen::VectorXd mean = data.Y.colwise().mean();
  const Eigen::MatrixXd centered = data.Y.rowwise() - mean.transpose();
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  const Eigen::MatrixXd cov = centered.transpose() * centered / denom;

  for (Eigen::Index k = 0; k < d; ++k)
    if (!(cov(k, k) > 1e-12 * std::max(1.0, mean.cwiseAbs().maxCoeff())))
      throw std::invalid_argument("default_priors: column " + std::to_string(k) +
                                  " has zero sample variance");

  HyperPriors p;
  p.alpha0 = 1.0;
  p.beta0 = 0.01;
  p.m0 = mean;

  // Prior mean targets for the precision factors, derived from the pooled
  // sample covariance. The volume target depends on how much of the scale
  // the lambda factor carries for the chosen structure.
  const double mean_var = cov.trace() / static_cast<double>(d);
  const Eigen::VectorXd diag_prec = cov.diagonal().cwiseInverse();
  const double log_geo_prec = diag_prec.array().log().mean();

  double volume_target;
  if (is_spherical(model)) {
    volume_target = 1.0 / mean_var;  // d / tr(cov)
  } else if (is_diagonal(model)) {
    volume_target = std::exp(log_geo_prec);  // 1 / geomean of the variances
  } else {
    // Oriented structures: lambda pairs with a determinant-one factor.
    const double logdet = Eigen::LLT<Eigen::MatrixXd>(cov).matrixL().toDenseMatrix()
                              .diagonal().array().log().sum() * 2.0;
    volume_target = std::exp(-logdet / static_cast<double>(d));
  }

  // Unit-shape gammas (a = 2 in the chi-square bookkeeping), mean matched.
  p.a0 = 2.0;
  p.b0 = p.a0 / volume_target;

  if (model == ModelId::EEI || model == ModelId::EEV) {
    // Full per-dimension precisions.
    p.ak0 = Eigen::VectorXd::Constant(d, 2.0);
    p.bk0 = p.ak0.cwiseQuotient(diag_prec);
  } else if (needs_dimension_gammas(model)) {
    // Determinant-normalized shape factors.
    const Eigen::VectorXd shape_target =
        (diag_prec.array() / std::exp(log_geo_prec)).matrix();
    p.ak0 = Eigen::VectorXd::Constant(d, 2.0);
    p.bk0 = p.ak0.cwiseQuotient(shape_target);
  }

  if (needs_wishart(model)) {
    p.wishart_df0 = static_cast<double>(d) + 2.0;
    if (model == ModelId::EEE || model == ModelId::VVV) {
      p.wishart_scale0 = p.wishart_df0 * cov;
    } else {
      // VEE / EVV put the Wishart on a determinant-one precision factor.
      p.wishart_scale0 = p.wishart_df0 * cov * volume_target;
    }
  }

  if (uses_orientation_sampler(model)) p.C0 = Eigen::MatrixXd::Zero(d, d);

  p.validate(model, d);
  return p;
}

}  // namespace gpcm
