#include "gpcm/fit_report.hpp"

#include <json.hpp>

namespace gpcm {

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  return arr;
}

}  // namespace

std::string FitReport::to_json() const {
  nlohmann::json j;
  j["model"] = model;
  j["seed"] = seed;
  j["priors_digest"] = priors_digest;
  j["G"] = G;
  j["converged"] = converged;
  j["iterations"] = iterations;
  j["rho"] = vector_to_json(rho);
  j["mu"] = nlohmann::json::array();
  j["T"] = nlohmann::json::array();
  j["Sigma"] = nlohmann::json::array();
  for (int g = 0; g < G; ++g) {
    j["mu"].push_back(vector_to_json(mu[g]));
    j["T"].push_back(matrix_to_json(T[g]));
    j["Sigma"].push_back(matrix_to_json(Sigma[g]));
  }
  if (lambda.size() > 0) j["lambda"] = vector_to_json(lambda);
  j["labels"] = labels;
  j["loglik_trace"] = loglik_trace;
  j["score"] = {{"dic", score.dic},
                {"p_d", score.p_d},
                {"posterior_loglik", score.posterior_loglik},
                {"bic", score.bic},
                {"omitted_kl_terms", score.omitted_kl_terms},
                {"from_converged_state", score.from_converged_state}};
  return j.dump();
}

}  // namespace gpcm
