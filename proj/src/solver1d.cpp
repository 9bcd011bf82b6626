#include "csf/solver1d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "csf/geometry.hpp"
#include "csf/indicator.hpp"
#include "csf/thermal.hpp"

namespace csf {

void Tridiagonal::factor() {
  const std::size_t n = size();
  inv_pivot_.assign(n, 0.0);
  upper_scaled_.assign(n, 0.0);
  double prev_upper = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = diag[i] - (i > 0 ? lower[i] * prev_upper : 0.0);
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SolverError("tridiagonal factorization hit a zero pivot at row " + std::to_string(i));
    }
    inv_pivot_[i] = 1.0 / pivot;
    upper_scaled_[i] = upper[i] * inv_pivot_[i];
    prev_upper = upper_scaled_[i];
  }
}

void Tridiagonal::solve(std::vector<double>& rhs) const {
  const std::size_t n = size();
  if (rhs.size() != n || inv_pivot_.size() != n) {
    throw SolverError("tridiagonal solve: size mismatch or missing factorization");
  }
  rhs[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= upper_scaled_[i] * rhs[i + 1];
}

std::vector<double> Tridiagonal::multiply(const std::vector<double>& x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += lower[i] * x[i - 1];
    if (i + 1 < n) v += upper[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

void ThermalScenario1D::validate() const {
  if (!mesh) throw InvalidInput("scenario needs a mesh");
  materials.validate();
  evaporation.validate();
  require_positive(dt, "time step");
  require_finite(t_end, "end time");
  if (t_end < dt * (1.0 - 1e-12)) throw InvalidInput("end time must be >= time step");
  require_finite(laser_flux, "laser flux");
  require_finite(initial_temperature, "initial temperature");
  require_finite(boundary_temperature, "boundary temperature");
  require_positive(picard_tolerance, "Picard tolerance");
  if (picard_max_iterations < 1) throw InvalidInput("Picard iteration limit must be >= 1");
  if (source_mode == SourceMode::Diffuse) {
    require_positive(eps, "interface thickness");
  } else if (mesh->find_node(0.0) == mesh->n_nodes()) {
    throw InvalidInput("sharp reference requires a mesh node at x = 0");
  }
  if (evaporation.cooling != CoolingVariant::None || convection) {
    require_positive(initial_temperature, "initial temperature");
  }
}

HeatSolver1D::HeatSolver1D(ThermalScenario1D scenario) : s_(std::move(scenario)) {
  s_.validate();
  interface_node_ = s_.mesh->find_node(0.0);
  assemble();
  if (!s_.convection) {
    system_ = system_matrix(0.0);
    system_.factor();
    unit_response_ = unit_source_;
    apply_dirichlet_rhs(unit_response_, 0.0);
    system_.solve(unit_response_);
  }
}

bool HeatSolver1D::temperature_dependent() const {
  return s_.evaporation.cooling != CoolingVariant::None || s_.convection;
}

void HeatSolver1D::assemble() {
  const Mesh1D& mesh = *s_.mesh;
  const std::size_t n = mesh.n_nodes();
  mass_ = Tridiagonal(n);
  stiffness_ = Tridiagonal(n);
  advection_ = Tridiagonal(n);
  unit_source_.assign(n, 0.0);
  band_.clear();

  const MaterialSet& m = s_.materials;
  const InterpolationCase icase = m.interpolation(s_.delta_case);
  const bool diffuse = s_.source_mode == SourceMode::Diffuse;
  const ScaledDelta delta(icase);
  const PhasePair k = m.conductivity();
  const PhasePair rho = m.density();

  mesh.for_each_quadrature_point([&](const QuadPoint& qp) {
    const std::size_t e = qp.element;
    double cv;
    double kk;
    double adv;  // c_v u per unit mass flux
    if (diffuse) {
      const double d = -qp.x.x;
      const double chi = indicator(d, s_.eps);
      cv = icase.heat_capacity(chi);
      kk = effective_conductivity(k, chi);
      adv = cv / interp_harmonic(rho, chi);
      if (std::abs(d) < 0.5 * s_.eps) {
        const double wd = qp.weight * delta(d, s_.eps);
        band_.push_back({e, qp.shape[0], qp.shape[1], wd});
        unit_source_[e] += wd * qp.shape[0];
        unit_source_[e + 1] += wd * qp.shape[1];
      }
    } else {
      const bool liquid = mesh.node(e) + mesh.node(e + 1) < 0.0;
      cv = liquid ? m.rho_liquid * m.cp_liquid : m.rho_gas * m.cp_gas;
      kk = liquid ? m.k_liquid : m.k_gas;
      adv = liquid ? m.cp_liquid : m.cp_gas;
    }
    const double w = qp.weight;
    const double n0 = qp.shape[0], n1 = qp.shape[1];
    const double g0 = qp.grad[0].x, g1 = qp.grad[1].x;
    mass_.diag[e] += w * cv * n0 * n0;
    mass_.upper[e] += w * cv * n0 * n1;
    mass_.lower[e + 1] += w * cv * n1 * n0;
    mass_.diag[e + 1] += w * cv * n1 * n1;
    stiffness_.diag[e] += w * kk * g0 * g0;
    stiffness_.upper[e] += w * kk * g0 * g1;
    stiffness_.lower[e + 1] += w * kk * g1 * g0;
    stiffness_.diag[e + 1] += w * kk * g1 * g1;
    advection_.diag[e] += w * adv * n0 * g0;
    advection_.upper[e] += w * adv * n0 * g1;
    advection_.lower[e + 1] += w * adv * n1 * g0;
    advection_.diag[e + 1] += w * adv * n1 * g1;
  });

  if (!diffuse) unit_source_[interface_node_] = 1.0;

  if (s_.lumped_mass) {
    for (std::size_t i = 0; i < n; ++i) {
      mass_.diag[i] += mass_.lower[i] + mass_.upper[i];
      mass_.lower[i] = 0.0;
      mass_.upper[i] = 0.0;
    }
  }
}

Tridiagonal HeatSolver1D::system_matrix(double mass_flux_value) const {
  Tridiagonal a(mass_.size());
  const double inv_dt = 1.0 / s_.dt;
  for (std::size_t i = 0; i < a.size(); ++i) {
    a.lower[i] = mass_.lower[i] * inv_dt + stiffness_.lower[i] + mass_flux_value * advection_.lower[i];
    a.diag[i] = mass_.diag[i] * inv_dt + stiffness_.diag[i] + mass_flux_value * advection_.diag[i];
    a.upper[i] = mass_.upper[i] * inv_dt + stiffness_.upper[i] + mass_flux_value * advection_.upper[i];
  }
  apply_dirichlet(a);
  return a;
}

void HeatSolver1D::apply_dirichlet(Tridiagonal& a) const {
  const std::size_t last = a.size() - 1;
  if (s_.left == BoundaryKind::Dirichlet) {
    a.diag[0] = 1.0;
    a.upper[0] = 0.0;
    a.lower[0] = 0.0;
  }
  if (s_.right == BoundaryKind::Dirichlet) {
    a.diag[last] = 1.0;
    a.lower[last] = 0.0;
    a.upper[last] = 0.0;
  }
}

void HeatSolver1D::apply_dirichlet_rhs(std::vector<double>& rhs, double value) const {
  if (s_.left == BoundaryKind::Dirichlet) rhs.front() = value;
  if (s_.right == BoundaryKind::Dirichlet) rhs.back() = value;
}

double HeatSolver1D::interface_temperature(const std::vector<double>& t) const {
  if (interface_node_ < t.size()) return t[interface_node_];
  return s_.mesh->interpolate(t, 0.0);
}

std::vector<double> HeatSolver1D::source_vector(const std::vector<double>& t) const {
  std::vector<double> f(unit_source_.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = s_.laser_flux * unit_source_[i];
  const CoolingVariant cooling = s_.evaporation.cooling;
  if (cooling == CoolingVariant::None) return f;
  const bool pointwise =
      s_.source_mode == SourceMode::Diffuse && s_.evaporation.method == EvalMethod::CE;
  if (!pointwise) {
    const double g = evaporative_cooling(interface_temperature(t), s_.evaporation);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += g * unit_source_[i];
    return f;
  }
  for (const BandPoint& b : band_) {
    const double tq = b.n0 * t[b.element] + b.n1 * t[b.element + 1];
    const double g = evaporative_cooling(tq, s_.evaporation) * b.weighted_delta;
    f[b.element] += g * b.n0;
    f[b.element + 1] += g * b.n1;
  }
  return f;
}

std::vector<double> HeatSolver1D::initial_field() const {
  std::vector<double> t(s_.mesh->n_nodes(), s_.initial_temperature);
  apply_dirichlet_rhs(t, s_.boundary_temperature);
  return t;
}

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

[[noreturn]] void picard_failure(int iterations, double change) {
  std::ostringstream msg;
  msg << "Picard iteration did not converge after " << iterations
      << " iterations (last max-norm change " << change << " K)";
  throw SolverError(msg.str());
}

void require_finite_field(const std::vector<double>& t) {
  for (double v : t) {
    if (!std::isfinite(v)) throw SolverError("non-finite temperature after solve");
  }
}

}  // namespace

std::vector<double> HeatSolver1D::step(const std::vector<double>& tn, int* picard_iterations,
                                       double* mass_flux_used) {
  if (tn.size() != s_.mesh->n_nodes()) throw InvalidInput("field length must match the mesh");
  std::vector<double> rhs0 = mass_.multiply(tn);
  for (double& v : rhs0) v /= s_.dt;
  const double tol = s_.picard_tolerance;
  const int max_it = s_.picard_max_iterations;

  if (!temperature_dependent()) {
    std::vector<double> rhs = source_vector(tn);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += rhs0[i];
    apply_dirichlet_rhs(rhs, s_.boundary_temperature);
    system_.solve(rhs);
    require_finite_field(rhs);
    if (picard_iterations) *picard_iterations = 1;
    return rhs;
  }

  const bool interface_coupled =
      s_.source_mode == SourceMode::SharpNodal || s_.evaporation.method == EvalMethod::IV;

  if (!s_.convection && interface_coupled) {
    // T^{k+1} = base + g(T^k_Gamma) z with base and z fixed within the step,
    // so the Picard sequence reduces to the scalar T_Gamma.
    std::vector<double> base(rhs0.size());
    for (std::size_t i = 0; i < base.size(); ++i) base[i] = rhs0[i] + s_.laser_flux * unit_source_[i];
    apply_dirichlet_rhs(base, s_.boundary_temperature);
    system_.solve(base);
    const std::vector<double>& z = unit_response_;
    double zmax = 0.0;
    for (double v : z) zmax = std::max(zmax, std::abs(v));
    const double base_g = interface_temperature(base);
    const double z_g = interface_temperature(z);
    double g_prev = evaporative_cooling(interface_temperature(tn), s_.evaporation);
    // First iterate compared against T^n.
    std::vector<double> t1(base.size());
    for (std::size_t i = 0; i < t1.size(); ++i) t1[i] = base[i] + g_prev * z[i];
    double change = max_abs_diff(t1, tn);
    double tau = base_g + g_prev * z_g;
    int it = 1;
    while (change >= tol) {
      if (it >= max_it) picard_failure(it, change);
      const double g = evaporative_cooling(tau, s_.evaporation);
      change = std::abs(g - g_prev) * zmax;
      g_prev = g;
      tau = base_g + g * z_g;
      ++it;
    }
    if (picard_iterations) *picard_iterations = it;
    std::vector<double> t(base.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = base[i] + g_prev * z[i];
    require_finite_field(t);
    return t;
  }

  if (!s_.convection) {
    // Pointwise (CE) coupling: iterate on increments to keep round-off out of
    // the convergence test.
    std::vector<double> f_prev = source_vector(tn);
    std::vector<double> t(rhs0.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rhs0[i] + f_prev[i];
    apply_dirichlet_rhs(t, s_.boundary_temperature);
    system_.solve(t);
    double change = max_abs_diff(t, tn);
    int it = 1;
    while (change >= tol) {
      if (it >= max_it) picard_failure(it, change);
      std::vector<double> f = source_vector(t);
      std::vector<double> inc(f.size());
      for (std::size_t i = 0; i < inc.size(); ++i) inc[i] = f[i] - f_prev[i];
      apply_dirichlet_rhs(inc, 0.0);
      system_.solve(inc);
      change = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] += inc[i];
        change = std::max(change, std::abs(inc[i]));
      }
      f_prev = std::move(f);
      ++it;
    }
    if (picard_iterations) *picard_iterations = it;
    require_finite_field(t);
    return t;
  }

  // Convection: the operator depends on mdot(T_Gamma) and is rebuilt per
  // iterate.
  std::vector<double> prev = tn;
  double mdot = 0.0;
  int it = 0;
  double change = 0.0;
  while (true) {
    mdot = mass_flux(interface_temperature(prev), s_.evaporation);
    Tridiagonal a = system_matrix(mdot);
    a.factor();
    std::vector<double> t = source_vector(prev);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += rhs0[i];
    apply_dirichlet_rhs(t, s_.boundary_temperature);
    a.solve(t);
    ++it;
    change = max_abs_diff(t, prev);
    prev = std::move(t);
    if (change < tol) break;
    if (it >= max_it) picard_failure(it, change);
  }
  if (picard_iterations) *picard_iterations = it;
  if (mass_flux_used) *mass_flux_used = mdot;
  require_finite_field(prev);
  return prev;
}

SolveReport1D HeatSolver1D::solve_transient() {
  const auto start = std::chrono::steady_clock::now();
  SolveReport1D report;
  std::vector<double> t = initial_field();
  const auto n_steps = static_cast<std::size_t>(std::llround(s_.t_end / s_.dt));
  report.picard_iterations.reserve(n_steps);
  for (std::size_t n = 0; n < n_steps; ++n) {
    int it = 0;
    double mdot = 0.0;
    t = step(t, &it, &mdot);
    report.picard_iterations.push_back(it);
    report.max_mass_flux = std::max(report.max_mass_flux, mdot);
  }
  report.steps = n_steps;
  const auto peak = std::max_element(t.begin(), t.end());
  report.peak_temperature = *peak;
  report.peak_location = s_.mesh->node(static_cast<std::size_t>(peak - t.begin()));
  report.interface_temperature = interface_temperature(t);
  report.temperature = Field1D(s_.mesh, std::move(t));
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolveReport1D HeatSolver1D::solve_steady() {
  if (temperature_dependent()) {
    throw InvalidInput("steady solve supports temperature-independent sources only");
  }
  if (s_.left != BoundaryKind::Dirichlet && s_.right != BoundaryKind::Dirichlet) {
    throw InvalidInput("steady solve needs at least one Dirichlet end");
  }
  const auto start = std::chrono::steady_clock::now();
  Tridiagonal k = stiffness_;
  apply_dirichlet(k);
  k.factor();
  std::vector<double> t = source_vector(initial_field());
  apply_dirichlet_rhs(t, s_.boundary_temperature);
  k.solve(t);
  require_finite_field(t);
  SolveReport1D report;
  const auto peak = std::max_element(t.begin(), t.end());
  report.peak_temperature = *peak;
  report.peak_location = s_.mesh->node(static_cast<std::size_t>(peak - t.begin()));
  report.interface_temperature = interface_temperature(t);
  report.temperature = Field1D(s_.mesh, std::move(t));
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double HeatSolver1D::heat_content(const std::vector<double>& t) const {
  const std::vector<double> mt = mass_.multiply(t);
  double sum = 0.0;
  for (double v : mt) sum += v;
  return sum;
}

double HeatSolver1D::source_power(const std::vector<double>& t) const {
  const std::vector<double> f = source_vector(t);
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum;
}

EnergyBalance HeatSolver1D::energy_balance(const std::vector<double>& tn,
                                           const std::vector<double>& tn1) const {
  EnergyBalance eb;
  std::vector<double> diff(tn.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = tn1[i] - tn[i];
  const std::vector<double> m_diff = mass_.multiply(diff);
  const std::vector<double> k_t = stiffness_.multiply(tn1);
  const std::vector<double> f = source_vector(tn1);
  double mdot = 0.0;
  if (s_.convection) mdot = mass_flux(interface_temperature(tn1), s_.evaporation);
  const std::vector<double> c_t = advection_.multiply(tn1);
  for (double v : m_diff) eb.storage_change += v;
  for (double v : f) eb.source_energy += v * s_.dt;
  auto reaction = [&](std::size_t i) {
    return m_diff[i] / s_.dt + k_t[i] + mdot * c_t[i] - f[i];
  };
  const std::size_t last = tn.size() - 1;
  if (s_.left == BoundaryKind::Dirichlet) eb.boundary_inflow -= s_.dt * reaction(0);
  if (s_.right == BoundaryKind::Dirichlet) eb.boundary_inflow -= s_.dt * reaction(last);
  return eb;
}

std::vector<double> HeatSolver1D::indicator_field() const {
  std::vector<double> chi(s_.mesh->n_nodes());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    const double d = -s_.mesh->node(i);
    if (s_.source_mode == SourceMode::Diffuse) {
      chi[i] = indicator(d, s_.eps);
    } else {
      chi[i] = d > 0.0 ? 1.0 : (d < 0.0 ? 0.0 : 0.5);
    }
  }
  return chi;
}

std::vector<double> HeatSolver1D::distance_field() const {
  std::vector<double> d(s_.mesh->n_nodes());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = -s_.mesh->node(i);
  return d;
}

double HeatSolver1D::gas_peclet(double mass_flux_value) const {
  const MaterialSet& m = s_.materials;
  const double gas_start = s_.source_mode == SourceMode::Diffuse ? 0.5 * s_.eps : 0.0;
  const double h = s_.mesh->max_element_size_in(gas_start, s_.mesh->x_max());
  if (h <= 0.0) return 0.0;
  const double u = mass_flux_value / m.rho_gas;
  return peclet_number(m.rho_gas * m.cp_gas, u, h, m.k_gas);
}

}  // namespace csf
