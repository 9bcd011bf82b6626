// Effective two-phase properties, dimensionless groups and the steady 1D
// analytic tent profile.
#pragma once

#include "csf/delta.hpp"

namespace csf {

enum class InterpolationRule { Arithmetic, Harmonic };

/// Dispatches to interp_arithmetic / interp_harmonic.
double effective_property(PhasePair pair, InterpolationRule rule, double chi);
/// Product of two interpolated pairs (e.g. rho_h * cp_a).
double effective_property(PhasePair first, InterpolationRule first_rule, PhasePair second,
                          InterpolationRule second_rule, double chi);

/// Effective conductivity; always the arithmetic mean.
inline double effective_conductivity(PhasePair k, double chi) {
  return effective_property(k, InterpolationRule::Arithmetic, chi);
}

/// k * tau / (rho_cp * L^2).
double fourier_number(double k, double tau, double rho_cp, double length);
/// rho_cp * u * h / k.
double peclet_number(double rho_cp, double u, double h, double k);

/// Steady temperature of a two-sided slab [-a, a] heated by a sharp flux q
/// at x = 0 with both ends held at T0.
struct SteadyTent {
  double q = 0.0;
  double a = 0.0;
  double k_gas = 0.0;
  double k_liquid = 0.0;
  double t0 = 0.0;

  double t_max() const;
  double operator()(double x) const;
};

SteadyTent steady_analytic_1d(double q, double a, double k_gas, double k_liquid, double t0);

}  // namespace csf
