#include "csf/evaporation.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <type_traits>

#include "csf/indicator.hpp"

namespace csf {

namespace {

constexpr double kUnderflowExponent = -700.0;

std::string lowercase(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

// Visits the nodes of a field that lie inside the diffuse band.
template <class Field, class F>
std::vector<double> nodal_band_values(const Field& T, const InterfaceGeometry& geom, double eps,
                                      F&& value_at) {
  require_positive(eps, "interface thickness");
  if (!T.mesh || T.values.size() != T.mesh->n_nodes()) {
    throw InvalidInput("field length must match the mesh node count");
  }
  std::vector<double> out(T.values.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Vec2 p;
    if constexpr (std::is_same_v<Field, Field1D>) {
      p = {T.mesh->node(i), 0.0};
    } else {
      p = T.mesh->node(i);
    }
    const double d = signed_distance(p, geom);
    if (std::abs(d) >= 0.5 * eps) continue;
    out[i] = value_at(i, p, d);
  }
  return out;
}

double field_at(const Field1D& T, Vec2 p) { return T.mesh->interpolate(T.values, p.x); }
double field_at(const Field2D& T, Vec2 p) { return T.mesh->interpolate(T.values, p); }

template <class Field>
std::vector<double> flux_ce(const Field& T, const ScalarFlux& flux, const ScaledDelta& delta,
                            const InterfaceGeometry& geom, double eps) {
  return nodal_band_values(T, geom, eps, [&](std::size_t i, Vec2, double d) {
    return flux(T.values[i]) * delta(d, eps);
  });
}

template <class Field>
std::vector<double> flux_iv(const Field& T, const ScalarFlux& flux, const ScaledDelta& delta,
                            const InterfaceGeometry& geom, double eps) {
  return nodal_band_values(T, geom, eps, [&](std::size_t, Vec2 p, double d) {
    const Projection proj = closest_point(p, geom);
    return flux(field_at(T, proj.point)) * delta(d, eps);
  });
}

}  // namespace

std::string_view to_string(CoolingVariant v) {
  switch (v) {
    case CoolingVariant::None: return "none";
    case CoolingVariant::WithEnthalpy: return "with_enthalpy";
    case CoolingVariant::WithoutEnthalpy: return "without_enthalpy";
  }
  return "none";
}

std::string_view to_string(EvalMethod m) { return m == EvalMethod::CE ? "CE" : "IV"; }

EvalMethod parse_eval_method(std::string_view name) {
  const std::string s = lowercase(name);
  if (s == "ce") return EvalMethod::CE;
  if (s == "iv") return EvalMethod::IV;
  throw InvalidInput("unknown method '" + std::string(name) + "'; expected one of {CE, IV}");
}

EvaporationModel EvaporationModel::from_materials(const MaterialSet& m, CoolingVariant cooling,
                                                  EvalMethod method) {
  EvaporationModel e;
  e.latent_heat = m.latent_heat;
  e.boiling_temperature = m.boiling_temperature;
  e.molar_mass = m.molar_mass;
  e.sticking_constant = m.sticking_constant;
  e.ambient_pressure = m.ambient_pressure;
  e.enthalpy_reference_temperature = m.enthalpy_reference_temperature;
  e.cp_liquid = m.cp_liquid;
  e.cooling = cooling;
  e.method = method;
  e.validate();
  return e;
}

void EvaporationModel::validate() const {
  require_positive(latent_heat, "latent_heat");
  require_positive(boiling_temperature, "boiling_temperature");
  require_positive(molar_mass, "molar_mass");
  require_positive(ambient_pressure, "ambient_pressure");
  require_positive(enthalpy_reference_temperature, "enthalpy_reference_temperature");
  require_positive(cp_liquid, "cp_liquid");
  require_finite(sticking_constant, "sticking_constant");
  if (sticking_constant < 0.0) throw InvalidInput("sticking_constant must be >= 0");
}

double recoil_pressure(double T, const EvaporationModel& m) {
  require_positive(T, "temperature");
  const double exponent =
      -m.molar_latent_heat() / MaterialSet::kGasConstant * (1.0 / T - 1.0 / m.boiling_temperature);
  if (exponent < kUnderflowExponent) return 0.0;
  return 0.54 * m.ambient_pressure * std::exp(exponent);
}

double mass_flux(double T, const EvaporationModel& m) {
  const double pv = recoil_pressure(T, m);
  return 0.82 * m.sticking_constant * pv *
         std::sqrt(m.molar_mass / (2.0 * kPi * MaterialSet::kGasConstant * T));
}

double evaporative_cooling(double T, const EvaporationModel& m, CoolingVariant variant) {
  switch (variant) {
    case CoolingVariant::None:
      require_positive(T, "temperature");
      return 0.0;
    case CoolingVariant::WithoutEnthalpy:
      return -m.latent_heat * mass_flux(T, m);
    case CoolingVariant::WithEnthalpy: {
      const double enthalpy = m.cp_liquid * (T - m.enthalpy_reference_temperature);
      return -(m.latent_heat + enthalpy) * mass_flux(T, m);
    }
  }
  return 0.0;
}

LaserModel LaserModel::constant(double q) {
  LaserModel l;
  l.kind = LaserKind::Constant1D;
  l.flux = q;
  l.validate();
  return l;
}

LaserModel LaserModel::gaussian(const MaterialSet& m) {
  LaserModel l;
  l.kind = LaserKind::Gaussian2D;
  l.absorptivity = m.absorptivity;
  l.power = m.laser_power;
  l.radius = m.laser_radius;
  l.validate();
  return l;
}

void LaserModel::validate() const {
  if (kind == LaserKind::Constant1D) {
    require_finite(flux, "laser flux");
    return;
  }
  if (!(absorptivity > 0.0 && absorptivity <= 1.0)) {
    throw InvalidInput("absorptivity must lie in (0, 1]");
  }
  require_positive(power, "laser power");
  require_positive(radius, "laser radius");
  require_finite(position.x, "laser position");
  require_finite(position.y, "laser position");
  if (std::abs(direction.norm() - 1.0) > 1e-12) {
    throw InvalidInput("laser direction must be a unit vector");
  }
}

double LaserModel::peak() const {
  if (kind == LaserKind::Constant1D) return flux;
  return absorptivity * power * 2.0 / (kPi * radius * radius);
}

double LaserModel::axis_distance(Vec2 x) const {
  const Vec2 rel = x - position;
  const Vec2 across = rel - direction * rel.dot(direction);
  return across.norm();
}

double LaserModel::flux_at(Vec2 x, Vec2 normal) const {
  if (kind == LaserKind::Constant1D) return flux;
  const double incidence = normal.dot(direction);
  if (incidence <= 0.0) return 0.0;
  const double s = axis_distance(x) / radius;
  return peak() * incidence * std::exp(-2.0 * s * s);
}

double laser_flux(Vec2 x, const InterfaceGeometry& geom, const LaserModel& laser) {
  if (laser.kind == LaserKind::Constant1D) return laser.flux;
  return laser.flux_at(x, distance_gradient(x, geom));
}

std::vector<double> volumetric_flux_ce(const Field1D& T, const ScalarFlux& flux,
                                       const ScaledDelta& delta, const InterfaceGeometry& geom,
                                       double eps) {
  return flux_ce(T, flux, delta, geom, eps);
}

std::vector<double> volumetric_flux_ce(const Field2D& T, const ScalarFlux& flux,
                                       const ScaledDelta& delta, const InterfaceGeometry& geom,
                                       double eps) {
  return flux_ce(T, flux, delta, geom, eps);
}

std::vector<double> volumetric_flux_iv(const Field1D& T, const ScalarFlux& flux,
                                       const ScaledDelta& delta, const InterfaceGeometry& geom,
                                       double eps) {
  return flux_iv(T, flux, delta, geom, eps);
}

std::vector<double> volumetric_flux_iv(const Field2D& T, const ScalarFlux& flux,
                                       const ScaledDelta& delta, const InterfaceGeometry& geom,
                                       double eps) {
  return flux_iv(T, flux, delta, geom, eps);
}

double recoil_l1(const Field1D& T, const InterfaceGeometry& geom, double eps, EvalMethod method,
                 const EvaporationModel& model, PhasePair rho) {
  require_positive(eps, "interface thickness");
  if (method == EvalMethod::IV) {
    return recoil_pressure(T(0.0), model);
  }
  const ScaledDelta delta(InterpolationCase::density_scaled(rho));
  double sum = 0.0;
  T.mesh->for_each_quadrature_point([&](const QuadPoint& qp) {
    const double d = signed_distance(qp.x, geom);
    if (std::abs(d) >= 0.5 * eps) return;
    const double t = qp.shape[0] * T.values[qp.nodes[0]] + qp.shape[1] * T.values[qp.nodes[1]];
    sum += qp.weight * recoil_pressure(t, model) * delta(d, eps);
  });
  return sum;
}

double recoil_l1(const Field2D& T, const InterfaceGeometry& geom, double eps, EvalMethod method,
                 const EvaporationModel& model, PhasePair rho, double mirror_factor) {
  require_positive(eps, "interface thickness");
  require_positive(mirror_factor, "mirror factor");
  const ScaledDelta delta(InterpolationCase::density_scaled(rho));
  const Mesh2D& mesh = *T.mesh;
  const auto& xs = mesh.xs();
  const auto& ys = mesh.ys();
  double sum = 0.0;
  for (std::size_t ey = 0; ey < mesh.ny(); ++ey) {
    for (std::size_t ex = 0; ex < mesh.nx(); ++ex) {
      const Vec2 c{0.5 * (xs[ex] + xs[ex + 1]), 0.5 * (ys[ey] + ys[ey + 1])};
      const double half_diag = 0.5 * std::hypot(xs[ex + 1] - xs[ex], ys[ey + 1] - ys[ey]);
      if (std::abs(signed_distance(c, geom)) > 0.5 * eps + half_diag) continue;
      mesh.visit_element(ex, ey, [&](const QuadPoint& qp) {
        const double d = signed_distance(qp.x, geom);
        if (std::abs(d) >= 0.5 * eps) return;
        double t = 0.0;
        if (method == EvalMethod::CE) {
          for (int k = 0; k < 4; ++k) t += qp.shape[k] * T.values[qp.nodes[k]];
        } else {
          t = T(closest_point(qp.x, geom).point);
        }
        sum += qp.weight * recoil_pressure(t, model) * delta(d, eps);
      });
    }
  }
  return mirror_factor * sum;
}

double convection_velocity(double mdot, PhasePair rho, double chi) {
  require_finite(mdot, "mass flux");
  return mdot / interp_harmonic(rho, chi);
}

std::vector<double> convection_velocity_1d(double t_interface, const std::vector<double>& chi,
                                           PhasePair rho, const EvaporationModel& model) {
  const double mdot = mass_flux(t_interface, model);
  std::vector<double> u(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) u[i] = convection_velocity(mdot, rho, chi[i]);
  return u;
}

}  // namespace csf
