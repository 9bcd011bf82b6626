#include <gtest/gtest.h>

#include <cmath>

#include "csf/evaporation.hpp"
#include "csf/indicator.hpp"
#include "oracles.hpp"

using namespace csf;

namespace {

const EvaporationModel kModel;
const InterfaceGeometry kPlane = InterfaceGeometry::planar(100e-6);
const InterfaceGeometry kPool = InterfaceGeometry::melt_pool(50e-6, 10e-6, 100e-6);

Field1D field_1d(std::shared_ptr<Mesh1D> mesh, const std::function<double(double)>& f) {
  std::vector<double> v(mesh->n_nodes());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(mesh->node(i));
  return Field1D(mesh, v);
}

}  // namespace

TEST(RecoilPressure, OracleValues) {
  EXPECT_EQ(recoil_pressure(kModel.boiling_temperature, kModel), 54000.0);
  EXPECT_NEAR(recoil_pressure(3500.0, kModel), 295865.05684870992, 1e-8);
  EXPECT_NEAR(recoil_pressure(3500.0, kModel), oracle::recoil_pressure(3500.0), 1e-8);
  EXPECT_NEAR(kModel.molar_latent_heat(), 422552.0, 1e-9);
  EXPECT_EQ(recoil_pressure(1.0, kModel), 0.0);
  EXPECT_EQ(recoil_pressure(1e-300, kModel), 0.0);
  EXPECT_THROW(recoil_pressure(0.0, kModel), InvalidInput);
  for (double t : {600.0, 1500.0, 2500.0, 4200.0, 6000.0}) {
    EXPECT_NEAR(recoil_pressure(t, kModel) / oracle::recoil_pressure(t), 1.0, 1e-12) << t;
  }
}

TEST(MassFlux, OracleValues) {
  EXPECT_NEAR(mass_flux(kModel.boiling_temperature, kModel), 23.929543004737900, 1e-12);
  for (double t : {1000.0, 2500.0, 3133.0, 3500.0, 5000.0}) {
    EXPECT_NEAR(mass_flux(t, kModel) / oracle::mass_flux(t), 1.0, 1e-12) << t;
  }
  EvaporationModel no_stick = kModel;
  no_stick.sticking_constant = 0.0;
  EXPECT_EQ(mass_flux(3500.0, no_stick), 0.0);
}

TEST(Evaporation, StrictlyMonotoneOnWorkingRange) {
  double p_prev = 0.0, m_prev = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double t = 500.0 + 4500.0 * k / 999.0;
    const double p = recoil_pressure(t, kModel);
    const double m = mass_flux(t, kModel);
    EXPECT_GT(p, p_prev);
    EXPECT_GT(m, m_prev);
    p_prev = p;
    m_prev = m;
  }
}

TEST(EvaporativeCooling, Variants) {
  const double q = evaporative_cooling(kModel.boiling_temperature, kModel, CoolingVariant::WithoutEnthalpy);
  EXPECT_NEAR(q, -211537160.16188304, 1e-4);
  const double t_ref = kModel.enthalpy_reference_temperature;
  EXPECT_EQ(evaporative_cooling(t_ref, kModel, CoolingVariant::WithEnthalpy),
            evaporative_cooling(t_ref, kModel, CoolingVariant::WithoutEnthalpy));
  EXPECT_EQ(evaporative_cooling(3000.0, kModel, CoolingVariant::None), 0.0);
  for (double t = t_ref; t < 5000.0; t += 37.0) {
    const double with = evaporative_cooling(t, kModel, CoolingVariant::WithEnthalpy);
    const double without = evaporative_cooling(t, kModel, CoolingVariant::WithoutEnthalpy);
    EXPECT_LE(with, without);
    EXPECT_LE(without, 0.0);
    EXPECT_NEAR(with, -(kModel.latent_heat + 1130.0 * (t - t_ref)) * mass_flux(t, kModel),
                1e-9 * std::abs(with) + 1e-300);
  }
}

TEST(Laser, GaussianPeakAndDecay) {
  const LaserModel laser = LaserModel::gaussian(MaterialSet{});
  EXPECT_NEAR(laser.peak(), 11368210220.849667, 1e-3);
  EXPECT_NEAR(laser_flux({0.0, -50e-6}, kPool, laser), laser.peak(), 1e-3);
  // One beam radius off axis on the flat surface: n . l = 1, exp(-2).
  EXPECT_NEAR(laser_flux({70e-6, 10e-6}, kPool, laser), laser.peak() * std::exp(-2.0), 1e-2);
  // Surfaces facing away from the beam receive nothing.
  EXPECT_EQ(laser.flux_at({0.0, 0.0}, {0.0, 1.0}), 0.0);
  EXPECT_EQ(laser.flux_at({0.0, 0.0}, {1.0, 0.0}), 0.0);
  // Inclined arc point: cosine factor.
  const double t = 0.4;
  const Vec2 p{50e-6 * std::sin(t), -50e-6 * std::cos(t)};
  EXPECT_NEAR(laser_flux(p, kPool, laser),
              laser.peak() * std::cos(t) * std::exp(-2.0 * std::pow(p.x / 70e-6, 2)), 1e-2);
  EXPECT_EQ(laser_flux({0.0, 0.0}, kPlane, LaserModel::constant(1e10)), 1e10);
}

TEST(VolumetricFlux, ConstantFieldMakesCEEqualIV) {
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::uniform(-100e-6, 100e-6, 400));
  const Field1D t = field_1d(mesh, [](double) { return 3200.0; });
  const ScaledDelta delta(MaterialSet{}.interpolation(DeltaCase::V1));
  const ScalarFlux f = [](double T) { return recoil_pressure(T, kModel); };
  const auto ce = volumetric_flux_ce(t, f, delta, kPlane, 5e-6);
  const auto iv = volumetric_flux_iv(t, f, delta, kPlane, 5e-6);
  for (std::size_t i = 0; i < ce.size(); ++i) EXPECT_EQ(ce[i], iv[i]);

  auto mesh2 = std::make_shared<Mesh2D>(Mesh2D::uniform(0.0, 100e-6, 50, -100e-6, 100e-6, 100));
  const Field2D t2(mesh2, std::vector<double>(mesh2->n_nodes(), 2900.0));
  const auto ce2 = volumetric_flux_ce(t2, f, delta, kPool, 12.5e-6);
  const auto iv2 = volumetric_flux_iv(t2, f, delta, kPool, 12.5e-6);
  for (std::size_t i = 0; i < ce2.size(); ++i) EXPECT_NEAR(ce2[i], iv2[i], 1e-12 * std::abs(ce2[i]));
}

TEST(VolumetricFlux, IVUsesInterfaceTemperature) {
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::uniform(-100e-6, 100e-6, 400));
  const Field1D t = field_1d(mesh, [](double x) { return 3000.0 - 1e7 * x; });
  const ScaledDelta classical(MaterialSet{}.interpolation(DeltaCase::Classical));
  const ScalarFlux identity = [](double T) { return T; };
  const double eps = 10e-6;
  const auto iv = volumetric_flux_iv(t, identity, classical, kPlane, eps);
  const auto ce = volumetric_flux_ce(t, identity, classical, kPlane, eps);
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const double d = -mesh->node(i);
    if (std::abs(d) >= 0.5 * eps) {
      EXPECT_EQ(iv[i], 0.0);
      continue;
    }
    EXPECT_NEAR(iv[i], 3000.0 * delta_classical(d, eps), 1e-9 * iv[i]);
    EXPECT_NEAR(ce[i], t.values[i] * delta_classical(d, eps), 1e-9 * ce[i]);
  }
  // Symmetric points about the midplane carry identical IV values.
  const std::size_t mid = mesh->find_node(0.0);
  for (std::size_t k = 1; k < 5; ++k) EXPECT_NEAR(iv[mid - k] / iv[mid + k], 1.0, 1e-12);
}

TEST(RecoilNorm, ConstantBandIntegratesToPressure) {
  auto mesh = std::make_shared<Mesh1D>(Mesh1D::interface_graded(100e-6, 2e-6, 32, 0.5e-6));
  const Field1D t = field_1d(mesh, [](double) { return 3133.0; });
  const PhasePair rho = MaterialSet{}.density();
  const double ce = recoil_l1(t, kPlane, 2e-6, EvalMethod::CE, kModel, rho);
  EXPECT_NEAR(ce / 54000.0, 1.0, 1e-8);
  EXPECT_EQ(recoil_l1(t, kPlane, 2e-6, EvalMethod::IV, kModel, rho), 54000.0);
  const Field1D cold = field_1d(mesh, [](double) { return 800.0; });
  EXPECT_NEAR(recoil_l1(cold, kPlane, 2e-6, EvalMethod::CE, kModel, rho) /
                  oracle::recoil_pressure(800.0),
              1.0, 1e-8);
}

TEST(RecoilNorm, TwoDimensionalInterfaceLength) {
  // Uniform T_v on the band: the norm is p_v(T_v) times the band-weighted
  // midplane length. Each curved piece of length L and curvature radius R
  // contributes L (1 +- m1 / R), with m1 the first moment of the delta in d
  // (liquid outside the arc, inside the fillets).
  const double a = 100e-6, r = 50e-6, b = 10e-6, eps = 4e-6;
  auto mesh = std::make_shared<Mesh2D>(Mesh2D::uniform(0.0, a, 400, -a, a, 800));
  const Field2D t(mesh, std::vector<double>(mesh->n_nodes(), 3133.0));
  const ScaledDelta rho_delta(InterpolationCase::density_scaled(MaterialSet{}.density()));
  const double m1 = oracle::integrate_graded([&](double d) { return d * rho_delta(d, eps); },
                                      -0.5 * eps, 0.5 * eps);
  const double length = kPi * r * (1.0 + m1 / r) + kPi * b * (1.0 - m1 / b) + 2.0 * (a - r - b);
  const double l1 = recoil_l1(t, kPool, eps, EvalMethod::CE, kModel, MaterialSet{}.density(), 2.0);
  EXPECT_NEAR(l1 / (54000.0 * length), 1.0, 2e-3);
  const double iv = recoil_l1(t, kPool, eps, EvalMethod::IV, kModel, MaterialSet{}.density(), 2.0);
  EXPECT_NEAR(iv / l1, 1.0, 1e-9);
}

TEST(Convection, VelocityAndMassContinuity) {
  const PhasePair rho = MaterialSet{}.density();
  const double mdot = mass_flux(3133.0, kModel);
  EXPECT_NEAR(convection_velocity(mdot, rho, 0.0), 5.8550386603224616, 1e-12);
  std::vector<double> chi;
  for (int k = 0; k <= 20; ++k) chi.push_back(k / 20.0);
  const auto u = convection_velocity_1d(3133.0, chi, rho, kModel);
  for (std::size_t i = 0; i < chi.size(); ++i) {
    EXPECT_NEAR(interp_harmonic(rho, chi[i]) * u[i] / mdot, 1.0, 1e-12);
  }
  const auto uniform = convection_velocity_1d(3133.0, chi, {2.0, 2.0}, kModel);
  for (double v : uniform) EXPECT_DOUBLE_EQ(v, uniform.front());
}

TEST(EvalMethodNames, ParseAndPrint) {
  EXPECT_EQ(parse_eval_method("ce"), EvalMethod::CE);
  EXPECT_EQ(parse_eval_method("IV"), EvalMethod::IV);
  EXPECT_THROW(parse_eval_method("XY"), InvalidInput);
}
