#include "gpcm/model_id.hpp"

#include <stdexcept>

namespace gpcm {

ModelTraits traits(ModelId m) {
  using C = Constraint;
  switch (m) {
    case ModelId::EII: return {C::Equal, C::None, C::None};
    case ModelId::VII: return {C::Variable, C::None, C::None};
    case ModelId::EEI: return {C::Equal, C::Equal, C::None};
    case ModelId::VEI: return {C::Variable, C::Equal, C::None};
    case ModelId::EVI: return {C::Equal, C::Variable, C::None};
    case ModelId::VVI: return {C::Variable, C::Variable, C::None};
    case ModelId::EEE: return {C::Equal, C::Equal, C::Equal};
    case ModelId::VEE: return {C::Variable, C::Equal, C::Equal};
    case ModelId::EEV: return {C::Equal, C::Equal, C::Variable};
    case ModelId::VEV: return {C::Variable, C::Equal, C::Variable};
    case ModelId::EVV: return {C::Equal, C::Variable, C::Variable};
    case ModelId::VVV: return {C::Variable, C::Variable, C::Variable};
  }
  throw std::invalid_argument("traits: invalid ModelId");
}

std::string to_string(ModelId m) {
  switch (m) {
    case ModelId::EII: return "EII";
    case ModelId::VII: return "VII";
    case ModelId::EEI: return "EEI";
    case ModelId::VEI: return "VEI";
    case ModelId::EVI: return "EVI";
    case ModelId::VVI: return "VVI";
    case ModelId::EEE: return "EEE";
    case ModelId::VEE: return "VEE";
    case ModelId::EEV: return "EEV";
    case ModelId::VEV: return "VEV";
    case ModelId::EVV: return "EVV";
    case ModelId::VVV: return "VVV";
  }
  throw std::invalid_argument("to_string: invalid ModelId");
}

ModelId parse_model(const std::string& name) {
  for (ModelId m : kAllModels)
    if (to_string(m) == name) return m;
  if (name == "EVE" || name == "VVE")
    throw std::invalid_argument("model " + name +
                                " is not supported (no tractable conjugate prior)");
  throw std::invalid_argument("unknown model name: " + name);
}

int free_covariance_params(ModelId m, int G, int d) {
  if (G < 1 || d < 1)
    throw std::invalid_argument("free_covariance_params: G and d must be positive");
  switch (m) {
    case ModelId::EII: return 1;
    case ModelId::VII: return G;
    case ModelId::EEI: return d;
    case ModelId::VEI: return d + G - 1;
    case ModelId::EVI: return d * G - G + 1;
    case ModelId::VVI: return d * G;
    case ModelId::EEE: return d * (d + 1) / 2;
    case ModelId::VEE: return d * (d + 1) / 2 + G;
    case ModelId::EEV: return G * d * (d + 1) / 2 - (G - 1) * d;
    case ModelId::VEV: return G * d * (d + 1) / 2 - (G - 1) * (d - 1);
    case ModelId::EVV: return G * d * (d + 1) / 2 - (G - 1);
    case ModelId::VVV: return G * d * (d + 1) / 2;
  }
  throw std::invalid_argument("free_covariance_params: invalid ModelId");
}

bool is_spherical(ModelId m) { return m == ModelId::EII || m == ModelId::VII; }

bool is_diagonal(ModelId m) {
  return m == ModelId::EEI || m == ModelId::VEI || m == ModelId::EVI ||
         m == ModelId::VVI;
}

bool uses_orientation_sampler(ModelId m) {
  return m == ModelId::EEV || m == ModelId::VEV;
}

}  // namespace gpcm
