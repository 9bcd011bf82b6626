#include "csf/materials.hpp"

#include <cmath>

#include "csf/types.hpp"

namespace csf {

void MaterialSet::validate() const {
  require_positive(k_gas, "k_gas");
  require_positive(k_liquid, "k_liquid");
  require_positive(rho_gas, "rho_gas");
  require_positive(rho_liquid, "rho_liquid");
  require_positive(cp_gas, "cp_gas");
  require_positive(cp_liquid, "cp_liquid");
  require_positive(boiling_temperature, "boiling_temperature");
  require_positive(latent_heat, "latent_heat");
  require_positive(enthalpy_reference_temperature, "enthalpy_reference_temperature");
  require_positive(molar_mass, "molar_mass");
  require_positive(ambient_pressure, "ambient_pressure");
  require_positive(laser_power, "laser_power");
  require_positive(laser_radius, "laser_radius");
  require_finite(sticking_constant, "sticking_constant");
  if (sticking_constant < 0.0) throw InvalidInput("sticking_constant must be >= 0");
  if (!(absorptivity > 0.0 && absorptivity <= 1.0)) {
    throw InvalidInput("absorptivity must lie in (0, 1]");
  }
}

}  // namespace csf
