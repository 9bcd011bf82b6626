#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "csf/metrics.hpp"
#include "csf/solver1d.hpp"
#include "csf/thermal.hpp"
#include "oracles.hpp"

using namespace csf;

namespace {

ThermalScenario1D b1_scenario(std::shared_ptr<const Mesh1D> mesh, DeltaCase c, double eps) {
  ThermalScenario1D s;
  s.mesh = std::move(mesh);
  s.delta_case = c;
  s.eps = eps;
  return s;
}

}  // namespace

TEST(Properties, EffectiveValues) {
  const MaterialSet m;
  EXPECT_DOUBLE_EQ(effective_conductivity(m.conductivity(), 0.0), m.k_gas);
  EXPECT_DOUBLE_EQ(effective_conductivity(m.conductivity(), 1.0), m.k_liquid);
  EXPECT_NEAR(effective_property(m.density(), InterpolationRule::Harmonic, m.specific_heat(),
                                 InterpolationRule::Arithmetic, 0.5),
              8.1658341658341658 * 570.65, 1e-9);
  EXPECT_NEAR(effective_property(m.heat_capacity(), InterpolationRule::Arithmetic, 0.5),
              2309178.09155, 1e-5);
}

TEST(Properties, DimensionlessGroups) {
  const MaterialSet m;
  EXPECT_NEAR(fourier_number(m.k_liquid, 1e-5, m.rho_liquid * m.cp_liquid, 100e-6),
              6.1992373833718e-3, 1e-15);
  // Gas-side Peclet number at the boiling-point vapour velocity.
  EXPECT_NEAR(peclet_number(m.rho_gas * m.cp_gas, 5.8550386603224616, 0.1e-6, m.k_gas),
              9.4447724748005e-4, 1e-15);
  EXPECT_THROW(fourier_number(1.0, 1.0, 1.0, 0.0), InvalidInput);
}

TEST(SteadyTent, PeakAndShape) {
  const MaterialSet m;
  const SteadyTent tent = steady_analytic_1d(1e10, 100e-6, m.k_gas, m.k_liquid, 500.0);
  EXPECT_NEAR(tent.t_max(), 35393.503283304191, 1e-8);
  EXPECT_DOUBLE_EQ(tent(0.0), tent.t_max());
  EXPECT_DOUBLE_EQ(tent(100e-6), 500.0);
  EXPECT_DOUBLE_EQ(tent(-100e-6), 500.0);
  EXPECT_NEAR(tent(50e-6), 0.5 * (tent.t_max() + 500.0), 1e-9);
  // Flux balance: k_l |T'| + k_g |T'| = q.
  const double slope = (tent.t_max() - 500.0) / 100e-6;
  EXPECT_NEAR((m.k_liquid + m.k_gas) * slope, 1e10, 1e-3);
}

TEST(Tridiagonal, MatchesDenseSolve) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 40;
  Tridiagonal t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.lower[i] = i > 0 ? u(rng) : 0.0;
    t.upper[i] = i + 1 < n ? u(rng) : 0.0;
    t.diag[i] = 4.0 + u(rng);
  }
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  std::vector<double> b = t.multiply(x);
  t.factor();
  t.solve(b);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(b[i], x[i], 1e-13);
}

TEST(Mesh1D, GradedMeshResolvesBand) {
  const double eps = 1e-6;
  const Mesh1D m = Mesh1D::interface_graded(100e-6, eps, 16, 0.5e-6);
  EXPECT_NE(m.find_node(0.0), m.n_nodes());
  EXPECT_DOUBLE_EQ(m.x_min(), -100e-6);
  EXPECT_DOUBLE_EQ(m.x_max(), 100e-6);
  EXPECT_NEAR(m.max_element_size_in(-0.5 * eps, 0.5 * eps), eps / 16, 1e-20);
  EXPECT_LE(m.max_element_size(), 0.5e-6 * (1 + 1e-9));
  for (std::size_t e = 0; e + 1 < m.n_elements(); ++e) {
    const double r = m.element_size(e + 1) / m.element_size(e);
    EXPECT_LT(r, 1.06);
    EXPECT_GT(r, 1.0 / 1.06 - 0.5);  // the merged last step may be shorter
  }
  // Symmetric about the origin.
  for (std::size_t i = 0; i < m.n_nodes(); ++i) {
    EXPECT_NEAR(m.node(i), -m.node(m.n_nodes() - 1 - i), 1e-18);
  }
}

TEST(HeatSolver1D, SteadyDiffuseMatchesDirectIntegration) {
  const MaterialSet mat;
  const double eps = 2e-6;
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::interface_graded(100e-6, eps, 64, 0.2e-6));
  HeatSolver1D solver(b1_scenario(mesh, DeltaCase::Classical, eps));
  const SolveReport1D r = solver.solve_steady();
  const oracle::SteadyDiffuse ref =
      oracle::steady_diffuse(1e10, 100e-6, mat.k_gas, mat.k_liquid, 500.0, eps);
  const double err = l2_relative_error(r.temperature, [&](double x) { return ref(x); });
  EXPECT_LT(err, 2e-5);
  EXPECT_NEAR(r.interface_temperature, ref(0.0), 1e-3 * ref(0.0));
}

TEST(HeatSolver1D, SteadySharpIsTheTent) {
  const MaterialSet m;
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::uniform(-100e-6, 100e-6, 200));
  ThermalScenario1D s = b1_scenario(mesh, DeltaCase::Classical, 0.0);
  s.source_mode = SourceMode::SharpNodal;
  HeatSolver1D solver(s);
  const SolveReport1D r = solver.solve_steady();
  const SteadyTent tent = steady_analytic_1d(1e10, 100e-6, m.k_gas, m.k_liquid, 500.0);
  for (std::size_t i = 0; i < mesh->n_nodes(); ++i) {
    EXPECT_NEAR(r.temperature.values[i], tent(mesh->node(i)), 1e-8 * tent.t_max());
  }
}

TEST(HeatSolver1D, SharpTransientMatchesTwoSlabSolution) {
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::uniform(-100e-6, 100e-6, 8000));
  ThermalScenario1D s = b1_scenario(mesh, DeltaCase::Classical, 0.0);
  s.source_mode = SourceMode::SharpNodal;
  s.dt = 1e-10;
  s.t_end = 1e-6;
  HeatSolver1D solver(s);
  const SolveReport1D r = solver.solve_transient();
  EXPECT_EQ(r.steps, 10000u);
  const double exact0 = oracle::two_slab_temperature(0.0, 1e-6, 1e10, 500.0);
  EXPECT_NEAR(r.interface_temperature, exact0, 2e-3 * exact0);
  const double err = l2_relative_error(
      r.temperature, [](double x) { return oracle::two_slab_temperature(x, 1e-6, 1e10, 500.0); });
  EXPECT_LT(err, 1e-3);
}

TEST(HeatSolver1D, EnergyIsConservedPerStep) {
  const double eps = 1e-6;
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::interface_graded(100e-6, eps, 32, 0.2e-6));
  for (DeltaCase c : {DeltaCase::Classical, DeltaCase::V1, DeltaCase::V4}) {
    HeatSolver1D solver(b1_scenario(mesh, c, eps));
    std::vector<double> t = solver.initial_field();
    for (int k = 0; k < 50; ++k) {
      const std::vector<double> next = solver.step(t);
      const EnergyBalance eb = solver.energy_balance(t, next);
      EXPECT_NEAR(eb.storage_change, eb.source_energy + eb.boundary_inflow,
                  1e-9 * std::abs(eb.source_energy));
      t = next;
    }
    // The unit-integral delta deposits q per unit area, up to the O(h^4)
    // error of two-point Gauss quadrature with 32 elements across the band.
    EXPECT_NEAR(solver.source_power(t), 1e10, 1e10 * 1e-6);
  }
}

TEST(HeatSolver1D, LumpedAndConsistentMassAgree) {
  const double eps = 2e-6;
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::interface_graded(100e-6, eps, 32, 0.2e-6));
  ThermalScenario1D s = b1_scenario(mesh, DeltaCase::V1, eps);
  s.t_end = 1e-6;
  const SolveReport1D consistent = HeatSolver1D(s).solve_transient();
  s.lumped_mass = true;
  const SolveReport1D lumped = HeatSolver1D(s).solve_transient();
  EXPECT_LT(l2_relative_error(lumped.temperature, consistent.temperature), 2e-3);
  EXPECT_NEAR(HeatSolver1D(s).heat_content(consistent.temperature.values),
              HeatSolver1D(b1_scenario(mesh, DeltaCase::V1, eps)).heat_content(consistent.temperature.values),
              1e-9 * HeatSolver1D(s).heat_content(consistent.temperature.values));
}

TEST(HeatSolver1D, EvaporativeCoolingLowersTemperature) {
  const double eps = 0.5e-6;
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::interface_graded(100e-6, eps, 32, 0.2e-6));
  ThermalScenario1D s = b1_scenario(mesh, DeltaCase::V1, eps);
  s.t_end = 2e-6;
  const SolveReport1D hot = HeatSolver1D(s).solve_transient();
  for (EvalMethod method : {EvalMethod::CE, EvalMethod::IV}) {
    s.evaporation = EvaporationModel::from_materials(s.materials, CoolingVariant::WithEnthalpy, method);
    const SolveReport1D cooled = HeatSolver1D(s).solve_transient();
    EXPECT_LT(cooled.interface_temperature, hot.interface_temperature);
    for (int it : cooled.picard_iterations) EXPECT_LE(it, s.picard_max_iterations);
  }
}

TEST(HeatSolver1D, PicardBudgetExhaustionIsASolverError) {
  const double eps = 0.5e-6;
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::interface_graded(100e-6, eps, 32, 0.2e-6));
  ThermalScenario1D s = b1_scenario(mesh, DeltaCase::V1, eps);
  s.initial_temperature = 3500.0;
  s.evaporation = EvaporationModel::from_materials(s.materials, CoolingVariant::WithEnthalpy, EvalMethod::CE);
  s.picard_max_iterations = 1;
  s.t_end = 1e-8;
  EXPECT_THROW(HeatSolver1D(s).solve_transient(), SolverError);
}

TEST(HeatSolver1D, ConvectionPecletIsSmallInGas) {
  const double eps = 0.1e-6;
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::interface_graded(100e-6, eps, 32, 0.05e-6));
  ThermalScenario1D s = b1_scenario(mesh, DeltaCase::V1, eps);
  s.evaporation = EvaporationModel::from_materials(s.materials, CoolingVariant::WithoutEnthalpy, EvalMethod::IV);
  s.convection = true;
  s.t_end = 1e-6;
  HeatSolver1D solver(s);
  const SolveReport1D r = solver.solve_transient();
  EXPECT_GT(r.max_mass_flux, 0.0);
  EXPECT_LT(solver.gas_peclet(r.max_mass_flux), 0.01);
  // Peclet scales linearly with the mass flux.
  EXPECT_NEAR(solver.gas_peclet(2.0), 2.0 * solver.gas_peclet(1.0), 1e-15);
}

TEST(HeatSolver1D, RejectsInvalidScenarios) {
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::uniform(-1e-4, 1e-4, 10));
  ThermalScenario1D s = b1_scenario(mesh, DeltaCase::V1, 0.0);
  EXPECT_THROW(HeatSolver1D{s}, InvalidInput);
  s.eps = 1e-6;
  s.dt = -1.0;
  EXPECT_THROW(HeatSolver1D{s}, InvalidInput);
  s.dt = 1e-9;
  s.evaporation.cooling = CoolingVariant::WithEnthalpy;
  HeatSolver1D solver(s);
  EXPECT_THROW(solver.solve_steady(), InvalidInput);
  auto odd = std::make_shared<Mesh1D>(Mesh1D::uniform(-1e-4, 1e-4, 9));
  ThermalScenario1D sharp = b1_scenario(odd, DeltaCase::Classical, 0.0);
  sharp.source_mode = SourceMode::SharpNodal;
  EXPECT_THROW(HeatSolver1D{sharp}, InvalidInput);
}
