#pragma once

#include <array>
#include <string>

namespace gpcm {

// The twelve members of the Gaussian parsimonious clustering family with
// tractable conjugate priors. Each covariance is eigen-decomposed as
// Sigma_g = lambda_g D_g A_g D_g' (volume, orientation, shape) and the
// three-letter name encodes the Equal/Variable/Identity constraints in
// mclust order: volume, shape, orientation.
enum class ModelId { EII, VII, EEI, VEI, EVI, VVI, EEE, VEE, EEV, VEV, EVV, VVV };

// Constraint carried by one of the three covariance factors.
enum class Constraint {
  Equal,     // shared across components
  Variable,  // free per component
  None,      // spherical shape / axis-aligned orientation
};

struct ModelTraits {
  Constraint volume;
  Constraint shape;
  Constraint orientation;
};

inline constexpr std::array<ModelId, 12> kAllModels = {
    ModelId::EII, ModelId::VII, ModelId::EEI, ModelId::VEI,
    ModelId::EVI, ModelId::VVI, ModelId::EEE, ModelId::VEE,
    ModelId::EEV, ModelId::VEV, ModelId::EVV, ModelId::VVV,
};

ModelTraits traits(ModelId m);
std::string to_string(ModelId m);

// Parses a three-letter model name. EVE and VVE are recognized but rejected
// as unsupported (no tractable conjugate prior); anything else unknown
// throws std::invalid_argument.
ModelId parse_model(const std::string& name);

// Number of free covariance parameters for G components in d dimensions.
int free_covariance_params(ModelId m, int G, int d);

// Convenience predicates used by the update engine.
bool is_spherical(ModelId m);            // EII, VII
bool is_diagonal(ModelId m);             // EEI, VEI, EVI, VVI
bool uses_orientation_sampler(ModelId m);  // EEV, VEV

}  // namespace gpcm
