#pragma once

#include <Eigen/Dense>

#include "gpcm/types.hpp"

namespace gpcm {

// log N(y | mu, T^{-1}) with precision parameterization:
//   -(d/2) log(2 pi) + (1/2) log|T| - (1/2) (y - mu)' T (y - mu).
// Throws std::domain_error when T is not symmetric positive definite.
double log_gaussian_density(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                            const Eigen::MatrixXd& T);

// Mixture log-likelihood sum_i log sum_g rho_g N(y_i | mu_g, T_g^{-1}),
// evaluated with per-row log-sum-exp stabilization.
double mixture_log_likelihood(const Dataset& data, const MixturePoint& point);

// n x G matrix of component log-densities log N(y_i | mu_g, T_g^{-1}).
// Shared by the mixture likelihood and the classification likelihood.
Eigen::MatrixXd component_log_densities(const Eigen::MatrixXd& Y,
                                        const MixturePoint& point);

}  // namespace gpcm
