#include "gpcm/vb_engine.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "gpcm/classification.hpp"
#include "gpcm/density.hpp"
#include "gpcm/selection.hpp"
#include "gpcm/special.hpp"

namespace gpcm {

void InitConfig::validate() const {
  if (G_max < 2) throw std::invalid_argument("InitConfig: G_max must be >= 2");
  if (prune_threshold < 0.0)
    throw std::invalid_argument("InitConfig: prune_threshold must be >= 0");
}

InitStrategy parse_init_strategy(const std::string& name) {
  if (name == "random" || name == "random-responsibilities")
    return InitStrategy::RandomResponsibilities;
  if (name == "kmeans" || name == "k-means-labels") return InitStrategy::KMeansLabels;
  if (name == "labels" || name == "provided-labels") return InitStrategy::ProvidedLabels;
  throw std::invalid_argument("unknown init strategy: " + name);
}

std::vector<int> kmeans_labels(const Eigen::MatrixXd& Y, int k, Rng& rng,
                               int max_iters) {
  const Eigen::Index n = Y.rows();
  if (k < 1 || k > n) throw std::invalid_argument("kmeans_labels: bad cluster count");

  // k-means++ seeding.
  std::vector<Eigen::VectorXd> centers;
  centers.push_back(Y.row(static_cast<Eigen::Index>(rng.integer(n))).transpose());
  Eigen::VectorXd dist2 =
      (Y.rowwise() - centers[0].transpose()).rowwise().squaredNorm();
  while (static_cast<int>(centers.size()) < k) {
    const double total = dist2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (; pick < n - 1; ++pick) {
        u -= dist2(pick);
        if (u <= 0.0) break;
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.integer(n));
    }
    centers.push_back(Y.row(pick).transpose());
    dist2 = dist2.cwiseMin(
        (Y.rowwise() - centers.back().transpose()).rowwise().squaredNorm());
  }

  std::vector<int> labels(n, 0);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    // Assignment.
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (Y.row(i).transpose() - centers[0]).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d2 = (Y.row(i).transpose() - centers[c]).squaredNorm();
        if (d2 < best_d) {
          best_d = d2;
          best = c;
        }
      }
      if (labels[i] != best + 1) changed = true;
      labels[i] = best + 1;
    }
    // Update, reseeding empty clusters at the globally farthest point.
    for (int c = 0; c < k; ++c) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(Y.cols());
      int count = 0;
      for (Eigen::Index i = 0; i < n; ++i)
        if (labels[i] == c + 1) {
          sum += Y.row(i).transpose();
          ++count;
        }
      if (count > 0) {
        centers[c] = sum / count;
      } else {
        Eigen::Index far = 0;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d2 =
              (Y.row(i).transpose() - centers[labels[i] - 1]).squaredNorm();
          if (d2 > far_d) {
            far_d = d2;
            far = i;
          }
        }
        centers[c] = Y.row(far).transpose();
        labels[far] = c + 1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return labels;
}

VbEngine::VbEngine(const Dataset& data, ModelId model, const HyperPriors& priors,
                   const InitConfig& init, const ConvergenceConfig& conv,
                   const McConfig& mc)
    : data_(data),
      model_(model),
      priors_(priors),
      init_(init),
      conv_(conv),
      mc_(mc),
      rng_(init.seed) {
  data_.validate();
  init_.validate();
  conv_.validate();
  mc_.validate();
  priors_.validate(model_, data_.dim());
  if (data_.known_classes() > init_.G_max)
    throw std::invalid_argument("VbEngine: known label exceeds G_max");
  initialize();
}

Eigen::MatrixXd VbEngine::initial_responsibilities() {
  const Eigen::Index n = data_.n();
  const int G = init_.G_max;
  Eigen::MatrixXd Z(n, G);

  switch (init_.strategy) {
    case InitStrategy::RandomResponsibilities:
      // Rows from a symmetric Dirichlet(1): normalized unit exponentials.
      for (Eigen::Index i = 0; i < n; ++i) {
        for (int g = 0; g < G; ++g) Z(i, g) = rng_.exponential();
        Z.row(i) /= Z.row(i).sum();
      }
      break;
    case InitStrategy::KMeansLabels: {
      const std::vector<int> labels = kmeans_labels(data_.Y, G, rng_);
      Z.setZero();
      for (Eigen::Index i = 0; i < n; ++i) Z(i, labels[i] - 1) = 1.0;
      break;
    }
    case InitStrategy::ProvidedLabels: {
      if (!data_.labels)
        throw std::invalid_argument("init: provided-labels needs dataset labels");
      Z.setZero();
      for (Eigen::Index i = 0; i < n; ++i) {
        const int z = (*data_.labels)(i);
        if (z > 0) {
          Z(i, z - 1) = 1.0;
        } else {
          for (int g = 0; g < G; ++g) Z(i, g) = rng_.exponential();
          Z.row(i) /= Z.row(i).sum();
        }
      }
      break;
    }
  }

  // Classification mode pins the known rows regardless of the strategy.
  if (data_.labels) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const int z = (*data_.labels)(i);
      if (z > 0) {
        Z.row(i).setZero();
        Z(i, z - 1) = 1.0;
      }
    }
  }
  return Z;
}

void VbEngine::initialize() {
  const int n = static_cast<int>(data_.n());
  const int d = static_cast<int>(data_.dim());
  const int G = init_.G_max;

  state_ = VbState{};
  state_.model = model_;
  state_.n = n;
  state_.d = d;
  state_.G = G;
  state_.Z = initial_responsibilities();

  state_.frozen = Eigen::VectorXi::Zero(n);
  if (data_.labels)
    for (int i = 0; i < n; ++i)
      if ((*data_.labels)(i) > 0) state_.frozen(i) = 1;
  state_.pinned_components = data_.known_classes();

  state_.alpha = Eigen::VectorXd::Constant(G, priors_.alpha0);
  state_.beta = Eigen::VectorXd::Constant(G, priors_.beta0);
  state_.m = priors_.m0.transpose().replicate(G, 1);

  // Prior-valued factor blocks; the first sweep below replaces them.
  state_.vol = {priors_.a0, priors_.b0};
  state_.vol_g.assign(G, {priors_.a0, priors_.b0});
  if (priors_.ak0.size() == d) {
    state_.diag_k.resize(d);
    for (int k = 0; k < d; ++k) state_.diag_k[k] = {priors_.ak0(k), priors_.bk0(k)};
    state_.shape_gk.assign(G, state_.diag_k);
    Eigen::VectorXd prior_mean(d);
    for (int k = 0; k < d; ++k) prior_mean(k) = priors_.ak0(k) / priors_.bk0(k);
    state_.shape_norm = normalize_shape(prior_mean).first;
    state_.shape_norm_g.assign(G, state_.shape_norm);
  }
  if (priors_.wishart_scale0.size() > 0) {
    state_.wishart = {priors_.wishart_df0, priors_.wishart_scale0};
    state_.wishart_g.assign(G, state_.wishart);
  }

  state_.E_T.assign(G, Eigen::MatrixXd::Identity(d, d));
  state_.E_logdet_T = Eigen::VectorXd::Zero(G);

  // One parameter sweep from the initial responsibilities.
  update_mean_block();
  if (uses_orientation_sampler(model_)) {
    // Seed the orientation chains from the prior-valued eigenframe
    // precision, then let the gamma updates see the sampled frames.
    draw_orientation_sets(state_, data_, priors_, mc_, rng_);
  }
  update_precision_block();
  refresh_expectations();
}

void VbEngine::update_responsibilities() {
  const int G = state_.G;
  const int d = state_.d;
  const double digamma_total = digamma(state_.alpha.sum());

  Eigen::MatrixXd logphi(state_.n, G);
  for (int g = 0; g < G; ++g) {
    const double elog_rho = digamma(state_.alpha(g)) - digamma_total;
    const Eigen::MatrixXd centered =
        data_.Y.rowwise() - state_.m.row(g);
    const Eigen::VectorXd quad =
        (centered * state_.E_T[g]).cwiseProduct(centered).rowwise().sum();
    logphi.col(g) =
        (elog_rho + 0.5 * state_.E_logdet_T(g) -
         0.5 * (quad.array() + static_cast<double>(d) / state_.beta(g)))
            .matrix();
  }

  for (int i = 0; i < state_.n; ++i) {
    if (state_.frozen(i)) continue;
    const Eigen::VectorXd row = logphi.row(i).transpose();
    const double norm = log_sum_exp(row);
    if (!std::isfinite(norm))
      throw std::runtime_error("update_responsibilities: responsibility row underflow");
    state_.Z.row(i) = (row.array() - norm).exp().transpose();
  }
}

void VbEngine::update_mean_block() {
  const Eigen::VectorXd counts = state_.counts();
  state_.alpha = counts.array() + priors_.alpha0;
  state_.beta = counts.array() + priors_.beta0;
  const Eigen::MatrixXd weighted = state_.Z.transpose() * data_.Y;  // G x d
  for (int g = 0; g < state_.G; ++g)
    state_.m.row(g) =
        (priors_.beta0 * priors_.m0.transpose() + weighted.row(g)) / state_.beta(g);
}

Eigen::MatrixXd VbEngine::component_scatter(int g) const {
  const Eigen::VectorXd z = state_.Z.col(g);
  const Eigen::VectorXd mg = state_.m.row(g).transpose();
  Eigen::MatrixXd S = data_.Y.transpose() * z.asDiagonal() * data_.Y;
  S.noalias() += priors_.beta0 * priors_.m0 * priors_.m0.transpose();
  S.noalias() -= state_.beta(g) * mg * mg.transpose();
  return 0.5 * (S + S.transpose());
}

Eigen::VectorXd VbEngine::component_scatter_diag(int g) const {
  const Eigen::VectorXd z = state_.Z.col(g);
  const Eigen::VectorXd mg = state_.m.row(g).transpose();
  Eigen::VectorXd s = data_.Y.cwiseProduct(data_.Y).transpose() * z;
  s += priors_.beta0 * priors_.m0.cwiseProduct(priors_.m0);
  s -= state_.beta(g) * mg.cwiseProduct(mg);
  return s;
}

Eigen::VectorXd VbEngine::rotated_scatter_diag(int g) const {
  const Eigen::MatrixXd S = component_scatter(g);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(state_.d);
  for (const Eigen::MatrixXd& D : state_.orient[g])
    acc += (D.transpose() * S * D).diagonal();
  return acc / static_cast<double>(state_.orient[g].size());
}

Eigen::MatrixXd VbEngine::ensure_spd(Eigen::MatrixXd W, const char* what) const {
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(W);
    if (llt.info() == Eigen::Success) return W;
    if (attempt == 0)
      std::cerr << what << ": scale update not SPD, adding jitter\n";
    W += 1e-10 * std::pow(10.0, attempt) *
         Eigen::MatrixXd::Identity(W.rows(), W.cols());
  }
  throw std::runtime_error(std::string(what) + ": scale update is not SPD");
}

void VbEngine::update_precision_block() {
  const int G = state_.G;
  const int d = state_.d;
  const Eigen::VectorXd counts = state_.counts();
  const double total = counts.sum();

  switch (model_) {
    case ModelId::EII: {
      double scatter = 0.0;
      for (int g = 0; g < G; ++g) scatter += component_scatter_diag(g).sum();
      state_.vol = {priors_.a0 + d * total, priors_.b0 + scatter};
      break;
    }
    case ModelId::VII: {
      for (int g = 0; g < G; ++g)
        state_.vol_g[g] = {priors_.a0 + d * counts(g),
                           priors_.b0 + component_scatter_diag(g).sum()};
      break;
    }
    case ModelId::EEI: {
      Eigen::VectorXd scatter = Eigen::VectorXd::Zero(d);
      for (int g = 0; g < G; ++g) scatter += component_scatter_diag(g);
      for (int k = 0; k < d; ++k)
        state_.diag_k[k] = {priors_.ak0(k) + total, priors_.bk0(k) + scatter(k)};
      break;
    }
    case ModelId::VEI: {
      // Volume against the current det-one shape, then shape against the
      // new volumes, then renormalize the shape expectation.
      std::vector<Eigen::VectorXd> s(G);
      for (int g = 0; g < G; ++g) {
        s[g] = component_scatter_diag(g);
        state_.vol_g[g] = {priors_.a0 + d * counts(g),
                           priors_.b0 + state_.shape_norm.dot(s[g])};
      }
      Eigen::VectorXd weighted = Eigen::VectorXd::Zero(d);
      for (int g = 0; g < G; ++g) weighted += state_.vol_g[g].mean() * s[g];
      Eigen::VectorXd mean(d);
      for (int k = 0; k < d; ++k) {
        state_.diag_k[k] = {priors_.ak0(k) + total, priors_.bk0(k) + weighted(k)};
        mean(k) = state_.diag_k[k].mean();
      }
      state_.shape_norm = normalize_shape(mean).first;
      break;
    }
    case ModelId::EVI: {
      std::vector<Eigen::VectorXd> s(G);
      double vol_scatter = 0.0;
      for (int g = 0; g < G; ++g) {
        s[g] = component_scatter_diag(g);
        vol_scatter += state_.shape_norm_g[g].dot(s[g]);
      }
      state_.vol = {priors_.a0 + d * total, priors_.b0 + vol_scatter};
      const double e_vol = state_.vol.mean();
      for (int g = 0; g < G; ++g) {
        Eigen::VectorXd mean(d);
        for (int k = 0; k < d; ++k) {
          state_.shape_gk[g][k] = {priors_.ak0(k) + counts(g),
                                   priors_.bk0(k) + e_vol * s[g](k)};
          mean(k) = state_.shape_gk[g][k].mean();
        }
        state_.shape_norm_g[g] = normalize_shape(mean).first;
      }
      break;
    }
    case ModelId::VVI: {
      for (int g = 0; g < G; ++g) {
        const Eigen::VectorXd s = component_scatter_diag(g);
        state_.vol_g[g] = {priors_.a0 + d * counts(g),
                           priors_.b0 + state_.shape_norm_g[g].dot(s)};
        const double e_vol = state_.vol_g[g].mean();
        Eigen::VectorXd mean(d);
        for (int k = 0; k < d; ++k) {
          state_.shape_gk[g][k] = {priors_.ak0(k) + counts(g),
                                   priors_.bk0(k) + e_vol * s(k)};
          mean(k) = state_.shape_gk[g][k].mean();
        }
        state_.shape_norm_g[g] = normalize_shape(mean).first;
      }
      break;
    }
    case ModelId::EEE: {
      Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
      for (int g = 0; g < G; ++g) scatter += component_scatter(g);
      state_.wishart.df = priors_.wishart_df0 + total;
      state_.wishart.inv_scale =
          ensure_spd(priors_.wishart_scale0 + scatter, "EEE");
      break;
    }
    case ModelId::VEE: {
      const Eigen::MatrixXd E_V = state_.wishart.mean();
      Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(d, d);
      for (int g = 0; g < G; ++g) {
        const Eigen::MatrixXd S = component_scatter(g);
        state_.vol_g[g] = {priors_.a0 + d * counts(g),
                           priors_.b0 + (E_V * S).trace()};
        weighted += state_.vol_g[g].mean() * S;
      }
      state_.wishart.df = priors_.wishart_df0 + total;
      state_.wishart.inv_scale =
          ensure_spd(priors_.wishart_scale0 + weighted, "VEE");
      break;
    }
    case ModelId::EVV: {
      double vol_scatter = 0.0;
      std::vector<Eigen::MatrixXd> S(G);
      for (int g = 0; g < G; ++g) {
        S[g] = component_scatter(g);
        vol_scatter += (state_.wishart_g[g].mean() * S[g]).trace();
      }
      state_.vol = {priors_.a0 + d * total, priors_.b0 + vol_scatter};
      const double e_vol = state_.vol.mean();
      for (int g = 0; g < G; ++g) {
        state_.wishart_g[g].df = priors_.wishart_df0 + counts(g);
        state_.wishart_g[g].inv_scale =
            ensure_spd(priors_.wishart_scale0 + e_vol * S[g], "EVV");
      }
      break;
    }
    case ModelId::VVV: {
      for (int g = 0; g < G; ++g) {
        state_.wishart_g[g].df = priors_.wishart_df0 + counts(g);
        state_.wishart_g[g].inv_scale =
            ensure_spd(priors_.wishart_scale0 + component_scatter(g), "VVV");
      }
      break;
    }
    case ModelId::EEV: {
      Eigen::VectorXd scatter = Eigen::VectorXd::Zero(d);
      for (int g = 0; g < G; ++g) scatter += rotated_scatter_diag(g);
      for (int k = 0; k < d; ++k)
        state_.diag_k[k] = {priors_.ak0(k) + total, priors_.bk0(k) + scatter(k)};
      break;
    }
    case ModelId::VEV: {
      std::vector<Eigen::VectorXd> s(G);
      for (int g = 0; g < G; ++g) {
        s[g] = rotated_scatter_diag(g);
        state_.vol_g[g] = {priors_.a0 + d * counts(g),
                           priors_.b0 + state_.shape_norm.dot(s[g])};
      }
      Eigen::VectorXd weighted = Eigen::VectorXd::Zero(d);
      for (int g = 0; g < G; ++g) weighted += state_.vol_g[g].mean() * s[g];
      Eigen::VectorXd mean(d);
      for (int k = 0; k < d; ++k) {
        state_.diag_k[k] = {priors_.ak0(k) + total, priors_.bk0(k) + weighted(k)};
        mean(k) = state_.diag_k[k].mean();
      }
      state_.shape_norm = normalize_shape(mean).first;
      break;
    }
  }
}

void VbEngine::refresh_expectations() {
  const int G = state_.G;
  const int d = state_.d;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);

  switch (model_) {
    case ModelId::EII:
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = state_.vol.mean() * eye;
        state_.E_logdet_T(g) = d * state_.vol.log_mean();
      }
      break;
    case ModelId::VII:
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = state_.vol_g[g].mean() * eye;
        state_.E_logdet_T(g) = d * state_.vol_g[g].log_mean();
      }
      break;
    case ModelId::EEI: {
      Eigen::VectorXd diag(d);
      double logdet = 0.0;
      for (int k = 0; k < d; ++k) {
        diag(k) = state_.diag_k[k].mean();
        logdet += state_.diag_k[k].log_mean();
      }
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = diag.asDiagonal();
        state_.E_logdet_T(g) = logdet;
      }
      break;
    }
    case ModelId::VEI:
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = (state_.vol_g[g].mean() * state_.shape_norm).asDiagonal();
        // |shape_norm| = 1, so the volume factor carries the log det.
        state_.E_logdet_T(g) = d * state_.vol_g[g].log_mean();
      }
      break;
    case ModelId::EVI:
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = (state_.vol.mean() * state_.shape_norm_g[g]).asDiagonal();
        state_.E_logdet_T(g) = d * state_.vol.log_mean();
      }
      break;
    case ModelId::VVI:
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] =
            (state_.vol_g[g].mean() * state_.shape_norm_g[g]).asDiagonal();
        state_.E_logdet_T(g) = d * state_.vol_g[g].log_mean();
      }
      break;
    case ModelId::EEE: {
      const Eigen::MatrixXd E_T = state_.wishart.mean();
      const double logdet = state_.wishart.expected_logdet();
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = E_T;
        state_.E_logdet_T(g) = logdet;
      }
      break;
    }
    case ModelId::VEE: {
      const Eigen::MatrixXd E_V = state_.wishart.mean();
      const double logdet_v = state_.wishart.expected_logdet();
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = state_.vol_g[g].mean() * E_V;
        state_.E_logdet_T(g) = d * state_.vol_g[g].log_mean() + logdet_v;
      }
      break;
    }
    case ModelId::EVV:
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = state_.vol.mean() * state_.wishart_g[g].mean();
        state_.E_logdet_T(g) =
            d * state_.vol.log_mean() + state_.wishart_g[g].expected_logdet();
      }
      break;
    case ModelId::VVV:
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = state_.wishart_g[g].mean();
        state_.E_logdet_T(g) = state_.wishart_g[g].expected_logdet();
      }
      break;
    case ModelId::EEV: {
      Eigen::VectorXd tau(d);
      double logdet = 0.0;
      for (int k = 0; k < d; ++k) {
        tau(k) = state_.diag_k[k].mean();
        logdet += state_.diag_k[k].log_mean();
      }
      for (int g = 0; g < G; ++g) {
        state_.E_T[g] = mc_precision_expectations(state_.orient[g], tau).E_T;
        // Exact identity: |D diag(tau) D'| does not depend on D.
        state_.E_logdet_T(g) = logdet;
      }
      break;
    }
    case ModelId::VEV:
      for (int g = 0; g < G; ++g) {
        const Eigen::VectorXd tau = state_.vol_g[g].mean() * state_.shape_norm;
        state_.E_T[g] = mc_precision_expectations(state_.orient[g], tau).E_T;
        state_.E_logdet_T(g) = d * state_.vol_g[g].log_mean();
      }
      break;
  }
}

int VbEngine::prune_components() {
  const Eigen::VectorXd counts = state_.counts();
  std::vector<int> keep;
  for (int g = 0; g < state_.G; ++g)
    if (g < state_.pinned_components || counts(g) > init_.prune_threshold)
      keep.push_back(g);
  if (keep.empty())
    throw std::runtime_error("prune_components: every component fell below the threshold");
  const int removed = state_.G - static_cast<int>(keep.size());
  if (removed == 0) return 0;

  const int G = static_cast<int>(keep.size());
  Eigen::MatrixXd Z(state_.n, G);
  Eigen::VectorXd alpha(G), beta(G);
  Eigen::MatrixXd m(G, state_.d);
  for (int j = 0; j < G; ++j) {
    Z.col(j) = state_.Z.col(keep[j]);
    alpha(j) = state_.alpha(keep[j]);
    beta(j) = state_.beta(keep[j]);
    m.row(j) = state_.m.row(keep[j]);
  }
  for (int i = 0; i < state_.n; ++i) {
    const double rowsum = Z.row(i).sum();
    if (rowsum > 1e-12)
      Z.row(i) /= rowsum;
    else
      Z.row(i).setConstant(1.0 / G);
  }

  auto select = [&keep](auto& vec) {
    auto old = vec;
    vec.clear();
    for (int j : keep) vec.push_back(old[j]);
  };
  select(state_.vol_g);
  if (!state_.shape_gk.empty()) select(state_.shape_gk);
  if (!state_.shape_norm_g.empty()) select(state_.shape_norm_g);
  if (!state_.wishart_g.empty()) select(state_.wishart_g);
  if (!state_.orient.empty()) select(state_.orient);
  select(state_.E_T);
  Eigen::VectorXd logdet(G);
  for (int j = 0; j < G; ++j) logdet(j) = state_.E_logdet_T(keep[j]);

  state_.Z = std::move(Z);
  state_.alpha = std::move(alpha);
  state_.beta = std::move(beta);
  state_.m = std::move(m);
  state_.E_logdet_T = std::move(logdet);
  state_.G = G;
  return removed;
}

double VbEngine::posterior_loglik() const {
  return mixture_log_likelihood(data_, state_.point_estimate());
}

FitReport VbEngine::fit() {
  std::vector<double> trace{posterior_loglik()};
  const bool sampler = uses_orientation_sampler(model_);
  bool converged = false;
  int iterations = 0;

  for (int it = 1; it <= conv_.max_iters; ++it) {
    update_responsibilities();
    update_mean_block();
    update_precision_block();
    refresh_expectations();

    if (sampler) {
      const auto accepted = guarded_orientation_update(state_, data_, priors_, mc_,
                                                       rng_, trace.back());
      if (!accepted) {
        // No restart improved the likelihood: converged at the maximum.
        converged = true;
        iterations = it;
        break;
      }
      trace.push_back(*accepted);
      prune_components();
    } else {
      prune_components();
      trace.push_back(posterior_loglik());
    }
    iterations = it;

    if (it >= conv_.min_iters && trace.size() >= 3) {
      const size_t k = trace.size() - 1;
      const AitkenVerdict v =
          aitken_converged(trace[k - 2], trace[k - 1], trace[k], conv_.epsilon);
      if (v == AitkenVerdict::Converged ||
          (v == AitkenVerdict::Undefined &&
           std::abs(trace[k] - trace[k - 1]) < conv_.epsilon)) {
        converged = true;
        break;
      }
    }
  }

  FitReport report;
  report.model = to_string(model_);
  report.seed = init_.seed;
  report.priors_digest = priors_.digest();
  report.G = state_.G;
  report.converged = converged;
  report.iterations = iterations;

  const MixturePoint point = state_.point_estimate();
  report.rho = point.rho;
  report.mu = point.mu;
  report.T = point.T;
  report.Sigma.resize(state_.G);
  for (int g = 0; g < state_.G; ++g) {
    Eigen::LLT<Eigen::MatrixXd> llt(point.T[g]);
    report.Sigma[g] = llt.solve(Eigen::MatrixXd::Identity(state_.d, state_.d));
  }
  if (is_spherical(model_)) {
    report.lambda.resize(state_.G);
    for (int g = 0; g < state_.G; ++g)
      report.lambda(g) = model_ == ModelId::EII ? 1.0 / state_.vol.mean()
                                                : 1.0 / state_.vol_g[g].mean();
  }
  report.labels = map_labels(state_.Z);
  report.loglik_trace = std::move(trace);
  report.score = dic(data_, state_, priors_);
  report.score.from_converged_state = converged;
  return report;
}

VbState init_state(const Dataset& data, ModelId model, const InitConfig& cfg,
                   const HyperPriors& priors, const McConfig& mc) {
  return VbEngine(data, model, priors, cfg, ConvergenceConfig{}, mc).state();
}

FitReport fit(const Dataset& data, ModelId model, const HyperPriors& priors,
              const InitConfig& init, const ConvergenceConfig& conv,
              const McConfig& mc) {
  return VbEngine(data, model, priors, init, conv, mc).fit();
}

}  // namespace gpcm
