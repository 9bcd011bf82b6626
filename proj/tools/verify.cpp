#include "verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "csf/delta.hpp"
#include "csf/evaporation.hpp"
#include "csf/format.hpp"
#include "csf/indicator.hpp"
#include "csf/materials.hpp"

namespace csf::verify {

namespace {

// Adaptive Gauss-Kronrod over the band; the weights can vary by twelve
// orders of magnitude across it.
double integrate_band(const std::function<double(double)>& f, double eps) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  return gauss_kronrod<double, 61>::integrate(f, -0.5 * eps, 0.5 * eps, 15, 1e-12, &err);
}

}  // namespace

Check delta_unit_integral(int draws, unsigned seed) {
  Check c{"delta_unit_integral", true, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_ratio(-6.0, 6.0);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  const double eps = 1.0;
  double worst = 0.0;
  std::string worst_case;
  for (int k = 0; k < draws; ++k) {
    const double rho_g = std::pow(10.0, log_scale(rng));
    const double cp_g = std::pow(10.0, log_scale(rng));
    const PhasePair rho{rho_g, rho_g * std::pow(10.0, log_ratio(rng))};
    const PhasePair cp{cp_g, cp_g * std::pow(10.0, log_ratio(rng))};
    // Every interpolated pair keeps its ratio inside the drawn range: the
    // single-property cases see a uniform cp, so alpha = rho * cp_g.
    const PhasePair cp_uniform{cp_g, cp_g};
    std::vector<InterpolationCase> cases;
    for (DeltaCase d : {DeltaCase::Classical, DeltaCase::V1, DeltaCase::V2}) {
      cases.push_back(InterpolationCase::make(d, rho, cp_uniform));
    }
    for (DeltaCase d : {DeltaCase::V3, DeltaCase::V4}) {
      cases.push_back(InterpolationCase::make(d, rho, cp));
    }
    cases.push_back(InterpolationCase::density_scaled(rho));
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const ScaledDelta delta(cases[i]);
      const double integral = integrate_band([&](double d) { return delta(d, eps); }, eps);
      const double dev = std::abs(integral - 1.0);
      if (!(dev < 1e-9)) c.passed = false;
      if (!(dev <= worst)) {
        worst = dev;
        worst_case = i == 5 ? "density-scaled" : std::string(to_string(cases[i].kind));
      }
    }
  }
  c.detail = "max |int - 1| = " + format_double(worst) + " (" + worst_case + ")";
  return c;
}

Check heat_capacity_cancellation() {
  Check c{"heat_capacity_cancellation", true, {}};
  const MaterialSet m;
  const double eps = 1e-6;
  const double q = 1e10;
  double worst = 0.0;
  for (DeltaCase d : {DeltaCase::V1, DeltaCase::V2, DeltaCase::V3, DeltaCase::V4}) {
    const InterpolationCase ic = m.interpolation(d);
    const double ratio0 = temperature_rate_shape(ic, q, 0.0, eps) / delta_classical(0.0, eps);
    for (int k = 1; k < 200; ++k) {
      const double dd = (-0.5 + k / 200.0) * eps * 0.999;
      const double ratio = temperature_rate_shape(ic, q, dd, eps) / delta_classical(dd, eps);
      worst = std::max(worst, std::abs(ratio / ratio0 - 1.0));
    }
  }
  c.passed = worst < 1e-12;
  c.detail = "max relative deviation = " + format_double(worst);
  return c;
}

Check recoil_at_boiling_point() {
  const EvaporationModel m;
  const double p = recoil_pressure(m.boiling_temperature, m);
  return {"recoil_at_boiling_point", p == 54000.0, "p_v(T_v) = " + format_double(p)};
}

Check mass_flux_oracle() {
  // Independent 50-digit evaluation of 0.82 * 54000 * sqrt(M / (2 pi R T_v)).
  constexpr double kOracle = 23.929543004737900;
  const EvaporationModel m;
  const double v = mass_flux(m.boiling_temperature, m);
  const double rel = std::abs(v / kOracle - 1.0);
  return {"mass_flux_oracle", rel < 5e-3,
          "mdot(T_v) = " + format_double(v) + ", relative deviation " + format_double(rel)};
}

Check cooling_variants_coincide() {
  const EvaporationModel m;
  const double t = m.enthalpy_reference_temperature;
  const double a = evaporative_cooling(t, m, CoolingVariant::WithEnthalpy);
  const double b = evaporative_cooling(t, m, CoolingVariant::WithoutEnthalpy);
  return {"cooling_variants_coincide", a == b,
          "with = " + format_double(a) + ", without = " + format_double(b)};
}

Check evaporation_monotone() {
  Check c{"evaporation_monotone", true, {}};
  const EvaporationModel m;
  double prev_p = -1.0, prev_m = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = 500.0 + 4500.0 * k / 1000.0;
    const double p = recoil_pressure(t, m);
    const double f = mass_flux(t, m);
    if (!(p > prev_p && f > prev_m)) {
      c.passed = false;
      c.detail = "not increasing at T = " + format_double(t);
      return c;
    }
    const double with = evaporative_cooling(t, m, CoolingVariant::WithEnthalpy);
    const double without = evaporative_cooling(t, m, CoolingVariant::WithoutEnthalpy);
    if (t >= m.enthalpy_reference_temperature && !(with <= without && without <= 0.0)) {
      c.passed = false;
      c.detail = "cooling ordering violated at T = " + format_double(t);
      return c;
    }
    prev_p = p;
    prev_m = f;
  }
  c.detail = "1001 samples on [500, 5000] K";
  return c;
}

Check level_set_round_trip() {
  Check c{"level_set_round_trip", true, {}};
  const double eps = 2e-6;
  double worst = 0.0;
  for (int k = -100; k <= 100; ++k) {
    const double d = k * 0.01 * eps;
    const double back = distance_from_level_set(level_set_from_distance(d, eps), eps);
    worst = std::max(worst, std::abs(back - d) / eps);
  }
  c.passed = worst < 1e-9;
  c.detail = "max |d' - d| / eps = " + format_double(worst);
  return c;
}

std::vector<Check> all_scalar_checks() {
  return {delta_unit_integral(),     heat_capacity_cancellation(), recoil_at_boiling_point(),
          mass_flux_oracle(),        cooling_variants_coincide(),  evaporation_monotone(),
          level_set_round_trip()};
}

}  // namespace csf::verify
