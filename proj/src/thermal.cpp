#include "csf/thermal.hpp"

#include <cmath>

#include "csf/types.hpp"

namespace csf {

double effective_property(PhasePair pair, InterpolationRule rule, double chi) {
  return rule == InterpolationRule::Arithmetic ? interp_arithmetic(pair, chi)
                                               : interp_harmonic(pair, chi);
}

double effective_property(PhasePair first, InterpolationRule first_rule, PhasePair second,
                          InterpolationRule second_rule, double chi) {
  return effective_property(first, first_rule, chi) * effective_property(second, second_rule, chi);
}

double fourier_number(double k, double tau, double rho_cp, double length) {
  require_positive(k, "conductivity");
  require_finite(tau, "time scale");
  if (tau < 0.0) throw InvalidInput("time scale must be >= 0");
  require_positive(rho_cp, "volume-specific heat capacity");
  require_positive(length, "length");
  return k * tau / (rho_cp * length * length);
}

double peclet_number(double rho_cp, double u, double h, double k) {
  require_positive(rho_cp, "volume-specific heat capacity");
  require_finite(u, "velocity");
  require_positive(h, "element size");
  require_positive(k, "conductivity");
  return rho_cp * u * h / k;
}

double SteadyTent::t_max() const { return q * a / (k_liquid + k_gas) + t0; }

double SteadyTent::operator()(double x) const {
  require_finite(x, "position");
  return (t_max() - t0) * (a - std::abs(x)) / a + t0;
}

SteadyTent steady_analytic_1d(double q, double a, double k_gas, double k_liquid, double t0) {
  require_finite(q, "interface flux");
  require_positive(a, "domain half-width");
  require_positive(k_gas, "k_gas");
  require_positive(k_liquid, "k_liquid");
  require_finite(t0, "T0");
  return {q, a, k_gas, k_liquid, t0};
}

}  // namespace csf
