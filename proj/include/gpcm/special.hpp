#pragma once

#include <Eigen/Dense>

namespace gpcm {

// Digamma function Psi(x), x > 0.
double digamma(double x);

// log of the multivariate gamma function, log Gamma_d(x).
double log_multivariate_gamma(int d, double x);

// E[log|T|] for T ~ Wishart with df degrees of freedom and inverse scale W,
// i.e. density proportional to |T|^{(df-d-1)/2} exp(-tr(W T)/2):
//   sum_k Psi((df + 1 - k)/2) + d log 2 - log|W|.
double wishart_expected_logdet(double df, const Eigen::MatrixXd& W);

// Numerically stable log(sum(exp(v))).
double log_sum_exp(const Eigen::VectorXd& v);

}  // namespace gpcm
