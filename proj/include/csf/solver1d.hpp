// 1D two-phase heat conduction / advection-diffusion with linear finite
// elements and implicit Euler:
//   (M/dt + K + C) T^{n+1} = M T^n / dt + F(T^{n+1}).
// Interface fluxes are either smeared with a CSF delta (diffuse) or applied
// as a nodal point source at x = 0 (sharp reference).
#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "csf/delta.hpp"
#include "csf/evaporation.hpp"
#include "csf/materials.hpp"
#include "csf/mesh.hpp"

namespace csf {

enum class SourceMode { Diffuse, SharpNodal };
enum class BoundaryKind { Dirichlet, Adiabatic };

struct ThermalScenario1D {
  std::shared_ptr<const Mesh1D> mesh;
  MaterialSet materials;
  DeltaCase delta_case = DeltaCase::Classical;
  double eps = 0.0;  // interface thickness (diffuse mode only)
  SourceMode source_mode = SourceMode::Diffuse;
  double laser_flux = 1e10;  // W/m^2, constant
  /// Evaporative cooling variant and CE/IV evaluation; cooling None disables
  /// temperature-dependent sources.
  EvaporationModel evaporation;
  /// Evaporation-driven convection u = mdot(T_Gamma) / rho (harmonic rho in
  /// diffuse mode, phase-wise constant rho in sharp mode).
  bool convection = false;
  double initial_temperature = 500.0;
  double boundary_temperature = 500.0;
  BoundaryKind left = BoundaryKind::Dirichlet;
  BoundaryKind right = BoundaryKind::Dirichlet;
  double dt = 1e-9;
  double t_end = 1e-5;
  bool lumped_mass = false;
  double picard_tolerance = 1e-8;  // K, max-norm of the iterate change
  int picard_max_iterations = 50;

  void validate() const;
};

/// Outcome of one transient or steady solve.
struct SolveReport1D {
  Field1D temperature;
  double interface_temperature = 0.0;  // T at the midplane x = 0
  double peak_temperature = 0.0;
  double peak_location = 0.0;
  double wall_seconds = 0.0;
  std::size_t steps = 0;
  std::vector<int> picard_iterations;  // one entry per step
  double max_mass_flux = 0.0;          // over all steps (convection runs)
};

/// Per-step energy bookkeeping: storage change = dt * source + boundary
/// inflow (up to the advective transport term).
struct EnergyBalance {
  double storage_change = 0.0;  // 1^T M (T^{n+1} - T^n)
  double source_energy = 0.0;   // dt * integral of the volumetric source
  double boundary_inflow = 0.0; // dt * heat entering through Dirichlet ends
};

/// Tridiagonal matrix with a cached LU factorization (no pivoting).
class Tridiagonal {
 public:
  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

  std::vector<double> lower;  // lower[i] couples row i to column i - 1
  std::vector<double> diag;
  std::vector<double> upper;  // upper[i] couples row i to column i + 1

  std::size_t size() const { return diag.size(); }
  void factor();
  /// Solves in place; factor() must have been called.
  void solve(std::vector<double>& rhs) const;
  std::vector<double> multiply(const std::vector<double>& x) const;

 private:
  std::vector<double> inv_pivot_;
  std::vector<double> upper_scaled_;
};

class HeatSolver1D {
 public:
  explicit HeatSolver1D(ThermalScenario1D scenario);

  const ThermalScenario1D& scenario() const { return s_; }
  const Mesh1D& mesh() const { return *s_.mesh; }

  std::vector<double> initial_field() const;
  /// One implicit Euler step.
  std::vector<double> step(const std::vector<double>& tn, int* picard_iterations = nullptr,
                           double* mass_flux_used = nullptr);
  SolveReport1D solve_transient();
  /// Steady state K T = F; only for temperature-independent sources.
  SolveReport1D solve_steady();

  /// 1^T M T, i.e. the integral of c_v T (identical for consistent and
  /// lumped mass).
  double heat_content(const std::vector<double>& t) const;
  /// Integral of the volumetric source evaluated at t.
  double source_power(const std::vector<double>& t) const;
  EnergyBalance energy_balance(const std::vector<double>& tn, const std::vector<double>& tn1) const;

  /// Nodal indicator; the sharp mode uses the step 1 (x < 0), 1/2 (x = 0),
  /// 0 (x > 0).
  std::vector<double> indicator_field() const;
  std::vector<double> distance_field() const;

  /// Largest element Peclet number in the gas for the given mass flux.
  double gas_peclet(double mass_flux) const;
  double interface_temperature(const std::vector<double>& t) const;

 private:
  struct BandPoint {
    std::size_t element;
    double n0, n1;
    double weighted_delta;  // quadrature weight * delta_i(d)
  };

  void assemble();
  std::vector<double> source_vector(const std::vector<double>& t) const;
  void apply_dirichlet(Tridiagonal& a) const;
  void apply_dirichlet_rhs(std::vector<double>& rhs, double value) const;
  Tridiagonal system_matrix(double mass_flux) const;
  bool temperature_dependent() const;

  ThermalScenario1D s_;
  Tridiagonal mass_;
  Tridiagonal stiffness_;
  Tridiagonal advection_;  // per unit mass flux
  std::vector<double> unit_source_;  // integral N_i delta (or e_{i0})
  std::vector<BandPoint> band_;
  std::size_t interface_node_;
  // Cached operator for runs without convection.
  Tridiagonal system_;
  std::vector<double> unit_response_;  // system^{-1} unit_source (zero BCs)
};

}  // namespace csf
