// Ti-6Al-4V-like two-phase material table with evaporation and laser
// constants. All values in SI base units.
#pragma once

#include "csf/delta.hpp"

namespace csf {

struct MaterialSet {
  double k_gas = 0.02863;       // W/(m K)
  double k_liquid = 28.63;      // W/(m K)
  double rho_gas = 4.087;       // kg/m^3
  double rho_liquid = 4087.0;   // kg/m^3
  double cp_gas = 11.3;         // J/(kg K)
  double cp_liquid = 1130.0;    // J/(kg K)
  double mu_gas = 3.5e-4;       // kg/(m s), carried but unused
  double mu_liquid = 3.5e-3;    // kg/(m s), carried but unused
  double surface_tension = 1.493;  // N/m, carried but unused
  double absorptivity = 0.35;
  double boiling_temperature = 3133.0;      // T_v (K)
  double latent_heat = 8.84e6;              // h_v (J/kg)
  double enthalpy_reference_temperature = 538.0;  // T_h,ref (K)
  double molar_mass = 4.78e-2;              // M (kg/mol)
  double sticking_constant = 1.0;           // c_s
  double liquidus_temperature = 2200.0;     // carried but unused
  double solidus_temperature = 1933.0;      // carried but unused
  double darcy_morphology = 1e11;           // carried but unused
  double darcy_division_guard = 1.0;        // carried but unused
  double ambient_pressure = 1e5;            // p_a (Pa)
  double laser_power = 250.0;               // P (W)
  double laser_radius = 70e-6;              // r_laser (m)

  static constexpr double kGasConstant = 8.31446;  // R, J/(mol K)

  PhasePair conductivity() const { return {k_gas, k_liquid}; }
  PhasePair density() const { return {rho_gas, rho_liquid}; }
  PhasePair specific_heat() const { return {cp_gas, cp_liquid}; }
  PhasePair heat_capacity() const { return {rho_gas * cp_gas, rho_liquid * cp_liquid}; }

  /// Molar latent heat h_v * M (J/mol).
  double molar_latent_heat() const { return latent_heat * molar_mass; }

  InterpolationCase interpolation(DeltaCase c) const {
    return InterpolationCase::make(c, density(), specific_heat());
  }

  /// Rejects non-positive or non-finite constants (the sticking constant may
  /// be zero; the absorptivity must lie in (0, 1]).
  void validate() const;
};

}  // namespace csf
