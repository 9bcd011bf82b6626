// Evaporation physics (recoil pressure, Knight mass flux, evaporative
// cooling), laser sources, continuous-evaluation (CE) and interface-value (IV)
// CSF fluxes, and recoil-pressure norms.
#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "csf/delta.hpp"
#include "csf/geometry.hpp"
#include "csf/materials.hpp"
#include "csf/mesh.hpp"

namespace csf {

enum class CoolingVariant { None, WithEnthalpy, WithoutEnthalpy };
/// CE: temperature-dependent fluxes use the local temperature. IV: they use
/// the temperature at the closest point on the interface midplane.
enum class EvalMethod { CE, IV };

std::string_view to_string(CoolingVariant v);
std::string_view to_string(EvalMethod m);
EvalMethod parse_eval_method(std::string_view name);

struct EvaporationModel {
  double latent_heat = 8.84e6;                    // h_v (J/kg)
  double boiling_temperature = 3133.0;            // T_v (K)
  double molar_mass = 4.78e-2;                    // M (kg/mol)
  double sticking_constant = 1.0;                 // c_s
  double ambient_pressure = 1e5;                  // p_a (Pa)
  double enthalpy_reference_temperature = 538.0;  // T_h,ref (K)
  double cp_liquid = 1130.0;                      // cp in h(T) (J/(kg K))
  CoolingVariant cooling = CoolingVariant::None;
  EvalMethod method = EvalMethod::CE;

  static EvaporationModel from_materials(const MaterialSet& m, CoolingVariant cooling,
                                         EvalMethod method);

  /// h_v * M (J/mol); derived, never set independently.
  double molar_latent_heat() const { return latent_heat * molar_mass; }
  void validate() const;
};

/// 0.54 p_a exp(-(hbar_v / R)(1/T - 1/T_v)); underflow gives exactly 0.
double recoil_pressure(double T, const EvaporationModel& m);
/// 0.82 c_s p_v(T) sqrt(M / (2 pi R T)).
double mass_flux(double T, const EvaporationModel& m);
/// Evaporative heat flux (<= 0): -h_v mdot, or -(h_v + cp (T - T_h,ref)) mdot.
double evaporative_cooling(double T, const EvaporationModel& m, CoolingVariant variant);
inline double evaporative_cooling(double T, const EvaporationModel& m) {
  return evaporative_cooling(T, m, m.cooling);
}

enum class LaserKind { Constant1D, Gaussian2D };

struct LaserModel {
  LaserKind kind = LaserKind::Constant1D;
  double flux = 0.0;          // Constant1D (W/m^2)
  double absorptivity = 0.35;
  double power = 250.0;       // W
  double radius = 70e-6;      // m
  Vec2 position{0.0, 0.0};
  Vec2 direction{0.0, -1.0};  // unit vector

  static LaserModel constant(double q);
  static LaserModel gaussian(const MaterialSet& m);

  void validate() const;
  /// alpha P 2 / (pi r^2).
  double peak() const;
  /// Distance from x to the beam centre line.
  double axis_distance(Vec2 x) const;
  /// Flux on a surface at x with unit normal n (into the liquid).
  double flux_at(Vec2 x, Vec2 normal) const;
};

/// Laser flux at x using the interface normal of the level set through x.
double laser_flux(Vec2 x, const InterfaceGeometry& geom, const LaserModel& laser);

using ScalarFlux = std::function<double(double)>;

/// Nodal values of flux(T(x)) * delta(x); zero outside the band.
std::vector<double> volumetric_flux_ce(const Field1D& T, const ScalarFlux& flux,
                                       const ScaledDelta& delta, const InterfaceGeometry& geom,
                                       double eps);
std::vector<double> volumetric_flux_ce(const Field2D& T, const ScalarFlux& flux,
                                       const ScaledDelta& delta, const InterfaceGeometry& geom,
                                       double eps);
/// Nodal values of flux(T(x_Gamma(x))) * delta(x) with x_Gamma the closest
/// point on the midplane and T interpolated there.
std::vector<double> volumetric_flux_iv(const Field1D& T, const ScalarFlux& flux,
                                       const ScaledDelta& delta, const InterfaceGeometry& geom,
                                       double eps);
std::vector<double> volumetric_flux_iv(const Field2D& T, const ScalarFlux& flux,
                                       const ScaledDelta& delta, const InterfaceGeometry& geom,
                                       double eps);

/// L1 norm of the diffuse recoil pressure p_v(T*) delta_rho, with T* the
/// local (CE) or interface (IV) temperature and delta_rho the
/// density-scaled delta. In 1D the IV value is p_v(T(x_Gamma)) (Pa); in 2D
/// the domain integral (N/m) is multiplied by `mirror_factor` (2 when only
/// half of a symmetric domain is meshed).
double recoil_l1(const Field1D& T, const InterfaceGeometry& geom, double eps, EvalMethod method,
                 const EvaporationModel& model, PhasePair rho);
double recoil_l1(const Field2D& T, const InterfaceGeometry& geom, double eps, EvalMethod method,
                 const EvaporationModel& model, PhasePair rho, double mirror_factor = 1.0);

/// mdot / rho_h(chi).
double convection_velocity(double mdot, PhasePair rho, double chi);
/// Nodal velocity u = mdot(T_interface) / rho_h(chi) for each indicator value.
std::vector<double> convection_velocity_1d(double t_interface, const std::vector<double>& chi,
                                           PhasePair rho, const EvaporationModel& model);

}  // namespace csf
