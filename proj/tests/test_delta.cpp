#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "csf/delta.hpp"
#include "csf/indicator.hpp"
#include "csf/materials.hpp"
#include "oracles.hpp"

using namespace csf;

namespace {

const DeltaCase kAll[] = {DeltaCase::Classical, DeltaCase::V1, DeltaCase::V2, DeltaCase::V3,
                          DeltaCase::V4};

// Weight integral over u in [0, 1] by adaptive quadrature of the weight
// written out independently of the library.
double weight_integral_oracle(DeltaCase c, PhasePair rho, PhasePair cp) {
  // v = 1 - u is passed separately so the harmonic mean stays accurate where
  // it peaks sharply next to u = 1.
  auto arith = [](PhasePair p, double u, double v) { return p.gas * v + p.liquid * u; };
  auto harm = [](PhasePair p, double u, double v) { return 1.0 / (u / p.liquid + v / p.gas); };
  const PhasePair rc{rho.gas * cp.gas, rho.liquid * cp.liquid};
  std::function<double(double, double)> w;
  switch (c) {
    case DeltaCase::Classical: w = [](double, double) { return 1.0; }; break;
    case DeltaCase::V1: w = [&](double u, double v) { return arith(rc, u, v); }; break;
    case DeltaCase::V2: w = [&](double u, double v) { return harm(rc, u, v); }; break;
    case DeltaCase::V3:
      w = [&](double u, double v) { return arith(rho, u, v) * arith(cp, u, v); };
      break;
    case DeltaCase::V4:
      w = [&](double u, double v) { return harm(rho, u, v) * arith(cp, u, v); };
      break;
  }
  return oracle::integrate_unit_split(w);
}

}  // namespace

TEST(Interpolation, ArithmeticAndHarmonic) {
  const PhasePair p{2.0, 8.0};
  EXPECT_DOUBLE_EQ(interp_arithmetic(p, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(interp_arithmetic(p, 1.0), 8.0);
  EXPECT_DOUBLE_EQ(interp_arithmetic(p, 0.25), 3.5);
  EXPECT_DOUBLE_EQ(interp_harmonic(p, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(interp_harmonic(p, 1.0), 8.0);
  EXPECT_DOUBLE_EQ(interp_harmonic(p, 0.5), 3.2);
  // Harmonic density of the material table at chi = 1/2: 2/(1/4.087 + 1/4087).
  EXPECT_NEAR(interp_harmonic({4.087, 4087.0}, 0.5), 8.1658341658341658, 1e-13);
  EXPECT_THROW(interp_harmonic({0.0, 1.0}, 0.5), InvalidInput);
}

TEST(Interpolation, HarmonicNeverExceedsArithmetic) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const PhasePair p{std::pow(10.0, 6 * u(rng) - 3), std::pow(10.0, 6 * u(rng) - 3)};
    const double chi = u(rng);
    EXPECT_LE(interp_harmonic(p, chi), interp_arithmetic(p, chi) * (1 + 1e-14));
  }
}

TEST(DeltaCaseNames, ParseAndPrint) {
  for (DeltaCase c : kAll) EXPECT_EQ(parse_delta_case(to_string(c)), c);
  EXPECT_EQ(parse_delta_case("v3"), DeltaCase::V3);
  EXPECT_EQ(parse_delta_case("CLASSICAL"), DeltaCase::Classical);
  try {
    parse_delta_case("V5");
    FAIL();
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    for (const char* n : {"classical", "V1", "V2", "V3", "V4"}) {
      EXPECT_NE(msg.find(n), std::string::npos) << msg;
    }
  }
}

TEST(CorrectionFactor, ClosedFormsMatchQuadrature) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> lr(-6.0, 6.0);
  for (int i = 0; i < 40; ++i) {
    const PhasePair rho{1.0, std::pow(10.0, lr(rng))};
    const PhasePair cp{std::pow(10.0, 0.5 * lr(rng)), std::pow(10.0, 0.5 * lr(rng))};
    for (DeltaCase c : kAll) {
      const InterpolationCase ic = InterpolationCase::make(c, rho, cp);
      const double expected = weight_integral_oracle(c, rho, cp);
      EXPECT_NEAR(weight_integral(ic) / expected, 1.0, 1e-10)
          << to_string(c) << " rho_l=" << rho.liquid << " cp=" << cp.gas << "," << cp.liquid;
      EXPECT_NEAR(correction_factor(ic).value * expected, 1.0, 1e-10);
    }
  }
}

TEST(CorrectionFactor, NearlyEqualPhasesUseStableForm) {
  for (double r : {1.0, 1.0 + 1e-14, 1.0 + 1e-9, 1.0 + 1e-5, 1.0 + 9e-3, 1.0 + 1.1e-2, 0.99}) {
    const PhasePair rho{1.0, r};
    const PhasePair cp{1.0, 1.0};
    for (DeltaCase c : {DeltaCase::V2, DeltaCase::V4}) {
      const InterpolationCase ic = InterpolationCase::make(c, rho, cp);
      EXPECT_NEAR(weight_integral(ic), weight_integral_oracle(c, rho, cp), 1e-14) << r;
    }
  }
}

TEST(CorrectionFactor, PinnedValues) {
  const PhasePair unit{1.0, 1.0};
  // V1 with alpha = (1, 3): c = 2 / (1 + 3).
  EXPECT_DOUBLE_EQ(correction_factor(InterpolationCase::make(DeltaCase::V1, {1.0, 3.0}, unit)).value, 0.5);
  // V2 with alpha = (e, 1): integral = e / (e - 1), so c = 1 - 1/e.
  const double c =
      correction_factor(InterpolationCase::make(DeltaCase::V2, {std::exp(1.0), 1.0}, unit)).value;
  EXPECT_NEAR(c, 0.63212055882855768, 1e-15);
  // Equal phases reduce every case to the classical delta.
  for (DeltaCase k : kAll) {
    EXPECT_NEAR(correction_factor(InterpolationCase::make(k, {2.0, 2.0}, {3.0, 3.0})).value, 1.0 / 6.0 * (k == DeltaCase::Classical ? 6.0 : 1.0), 1e-15);
  }
}

TEST(Delta, ClassicalShape) {
  const double eps = 2.0;
  EXPECT_DOUBLE_EQ(delta_classical(0.0, eps), 1.0);
  EXPECT_EQ(delta_classical(1.0, eps), 0.0);
  EXPECT_EQ(delta_classical(-3.0, eps), 0.0);
  for (int k = -50; k <= 50; ++k) {
    const double d = k * 0.019;
    EXPECT_NEAR(delta_classical(d, eps), oracle::classical_delta(d, eps), 1e-15);
  }
}

TEST(Delta, ClassicalIsIndicatorDerivative) {
  const double eps = 1e-6, h = 1e-13;
  for (int k = -40; k <= 40; ++k) {
    const double d = k * eps / 100.0;
    const double fd = (indicator(d + h, eps) - indicator(d - h, eps)) / (2 * h);
    EXPECT_NEAR(fd * eps, delta_classical(d, eps) * eps, 1e-5);
  }
}

TEST(Delta, ScaledIntegratesToOneForMaterialTable) {
  const MaterialSet m;
  const double eps = 6e-6;
  for (DeltaCase c : kAll) {
    const ScaledDelta delta(m.interpolation(c));
    const double integral =
        oracle::integrate_graded([&](double d) { return delta(d, eps); }, -0.5 * eps, 0.5 * eps);
    EXPECT_NEAR(integral, 1.0, 1e-10) << to_string(c);
  }
  const ScaledDelta rho_delta(InterpolationCase::density_scaled(m.density()));
  EXPECT_NEAR(oracle::integrate_graded([&](double d) { return rho_delta(d, eps); }, -0.5 * eps, 0.5 * eps),
              1.0, 1e-10);
}

TEST(Delta, ScaledShiftsMassTowardsLiquid) {
  const MaterialSet m;
  const double eps = 1.0;
  const ScaledDelta v1(m.interpolation(DeltaCase::V1));
  const double liquid = oracle::integrate_graded([&](double d) { return v1(d, eps); }, 0.0, 0.5);
  // w ~ chi, c = 2: the liquid half carries int_{1/2}^1 2u du = 3/4 up to
  // the gas-side offset of w.
  EXPECT_NEAR(liquid, 0.75, 1e-3);
  EXPECT_EQ(v1(0.6, eps), 0.0);
  EXPECT_EQ(delta_scaled(m.interpolation(DeltaCase::V1), 0.3, eps), v1(0.3, eps));
}

TEST(HeatCapacity, MatchesCaseDefinition) {
  const MaterialSet m;
  // (rho cp)_a at chi = 1/2.
  EXPECT_NEAR(m.interpolation(DeltaCase::V1).heat_capacity(0.5), 2309178.0915500, 1e-6);
  EXPECT_NEAR(m.interpolation(DeltaCase::Classical).heat_capacity(0.5), 2309178.0915500, 1e-6);
  EXPECT_NEAR(m.interpolation(DeltaCase::V4).heat_capacity(0.5),
              8.1658341658341658 * 570.65, 1e-8);
  for (DeltaCase c : kAll) {
    const InterpolationCase ic = m.interpolation(c);
    EXPECT_NEAR(ic.heat_capacity(0.0), 4.087 * 11.3, 1e-9);
    EXPECT_NEAR(ic.heat_capacity(1.0), 4087.0 * 1130.0, 1e-6);
  }
}

TEST(TemperatureRate, CancellationHoldsForMatchedCases) {
  const MaterialSet m;
  const double eps = 1e-6, q = 1e10;
  for (DeltaCase c : {DeltaCase::V1, DeltaCase::V2, DeltaCase::V3, DeltaCase::V4}) {
    const InterpolationCase ic = m.interpolation(c);
    const double expected = q * correction_factor(ic).value;
    for (int k = -49; k <= 49; ++k) {
      const double d = k * eps / 100.0;
      const double r = temperature_rate_shape(ic, q, d, eps) / delta_classical(d, eps);
      EXPECT_NEAR(r / expected, 1.0, 1e-12) << to_string(c) << " d=" << d;
    }
  }
}

TEST(TemperatureRate, ClassicalPeaksInLowCapacityPhase) {
  const MaterialSet m;
  const InterpolationCase ic = m.interpolation(DeltaCase::Classical);
  const double eps = 1.0, q = 1.0;
  // Near the gas edge of the band the heat capacity is orders of magnitude
  // below the liquid edge while the delta is symmetric.
  EXPECT_GT(temperature_rate_shape(ic, q, -0.49, eps),
            1e3 * temperature_rate_shape(ic, q, 0.49, eps));
  const double explicit_cv = temperature_rate_shape(ic, q, 0.1, eps, 1.0);
  EXPECT_NEAR(explicit_cv, q * delta_classical(0.1, eps), 1e-15);
}

TEST(InterpolationCase, RejectsNonPositiveProperties) {
  EXPECT_THROW(InterpolationCase::make(DeltaCase::V2, {0.0, 1.0}, {1.0, 1.0}), InvalidInput);
  EXPECT_THROW(InterpolationCase::make(DeltaCase::V1, {1.0, -1.0}, {1.0, 1.0}), InvalidInput);
  EXPECT_THROW(delta_classical(0.0, 0.0), InvalidInput);
}
