#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "csf/geometry.hpp"
#include "csf/indicator.hpp"
#include "oracles.hpp"

using namespace csf;

namespace {

const InterfaceGeometry kPool = InterfaceGeometry::melt_pool(50e-6, 10e-6, 100e-6);

}  // namespace

TEST(Indicator, MatchesOracleAcrossBand) {
  const double eps = 3e-6;
  for (int k = -60; k <= 60; ++k) {
    const double d = k * eps / 100.0;
    EXPECT_NEAR(indicator(d, eps), oracle::indicator(d, eps), 1e-15) << d;
  }
}

TEST(Indicator, QuarterBandValue) {
  // 0.5 + 0.25 + 1/(2 pi) evaluated in 50 digits.
  EXPECT_NEAR(indicator(0.25, 1.0), 0.90915494309189534, 1e-15);
}

TEST(Indicator, SaturatesAndIsMonotone) {
  const double eps = 1.0;
  EXPECT_EQ(indicator(-0.5, eps), 0.0);
  EXPECT_EQ(indicator(0.5, eps), 1.0);
  EXPECT_EQ(indicator(-7.0, eps), 0.0);
  EXPECT_EQ(indicator(7.0, eps), 1.0);
  EXPECT_DOUBLE_EQ(indicator(0.0, eps), 0.5);
  double prev = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double v = indicator(-0.6 + 1.2 * k / 1000.0, eps);
    EXPECT_GE(v, prev);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
}

TEST(Indicator, SymmetryProperty) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double eps = std::pow(10.0, -6 + 2 * u(rng));
    const double d = u(rng) * eps;
    EXPECT_NEAR(indicator(d, eps) + indicator(-d, eps), 1.0, 1e-14);
  }
}

TEST(Indicator, RejectsInvalidInput) {
  EXPECT_THROW(indicator(0.0, 0.0), InvalidInput);
  EXPECT_THROW(indicator(0.0, -1.0), InvalidInput);
  EXPECT_THROW(indicator(std::nan(""), 1.0), InvalidInput);
}

TEST(LevelSet, RoundTripInsideBand) {
  const double eps = 1e-6;
  for (int k = -200; k <= 200; ++k) {
    const double d = k * eps / 200.0;
    const double phi = level_set_from_distance(d, eps);
    EXPECT_NEAR(phi, std::tanh(3.0 * d / eps), 1e-15);
    EXPECT_NEAR(distance_from_level_set(phi, eps), d, 1e-12 * eps) << d;
  }
}

TEST(LevelSet, SaturatedValuesStayFinite) {
  const double eps = 1e-6;
  const double far = distance_from_level_set(1.0, eps);
  EXPECT_TRUE(std::isfinite(far));
  EXPECT_GT(far, 4.0 * eps);
  EXPECT_EQ(distance_from_level_set(-1.0, eps), -far);
  EXPECT_THROW(distance_from_level_set(1.0 + 1e-9, eps), InvalidInput);
  EXPECT_THROW(distance_from_level_set(std::nan(""), eps), InvalidInput);
}

TEST(SignedDistance, Planar) {
  const auto g = InterfaceGeometry::planar(100e-6);
  EXPECT_EQ(signed_distance({-3e-6, 0.0}, g), 3e-6);
  EXPECT_EQ(signed_distance({2e-6, 0.0}, g), -2e-6);
  const Projection p = closest_point({5e-6, 0.0}, g);
  EXPECT_EQ(p.point.x, 0.0);
}

TEST(SignedDistance, MeltPoolBranches) {
  // Bottom of the depression, inside the metal below it, the flat surface
  // and a fillet point.
  EXPECT_NEAR(signed_distance({0.0, -50e-6}, kPool), 0.0, 1e-18);
  EXPECT_NEAR(signed_distance({0.0, -60e-6}, kPool), 10e-6, 1e-18);
  EXPECT_NEAR(signed_distance({0.0, 0.0}, kPool), -50e-6, 1e-18);
  EXPECT_NEAR(signed_distance({80e-6, 10e-6}, kPool), 0.0, 1e-18);
  EXPECT_NEAR(signed_distance({80e-6, 30e-6}, kPool), -20e-6, 1e-18);
  EXPECT_NEAR(signed_distance({80e-6, 0.0}, kPool), 10e-6, 1e-18);
  const double t = 0.3;
  const Vec2 on_fillet{60e-6 - 10e-6 * std::cos(t), 10e-6 * std::sin(t)};
  EXPECT_NEAR(signed_distance(on_fillet, kPool), 0.0, 1e-17);
}

TEST(SignedDistance, MatchesBruteForceProjection) {
  // The closest point is found by exhaustive sampling of the midplane and
  // compared against both signed_distance and closest_point.
  std::vector<Vec2> curve;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const double t = kPi * i / n;  // arc y <= 0
    curve.push_back({-50e-6 * std::cos(t), -50e-6 * std::sin(t)});
  }
  for (int side : {-1, 1}) {
    for (int i = 0; i <= n / 4; ++i) {
      const double t = 0.5 * kPi * i / (n / 4);
      curve.push_back({side * (60e-6 - 10e-6 * std::cos(t)), 10e-6 * std::sin(t)});
    }
    for (int i = 0; i <= n / 4; ++i) {
      curve.push_back({side * (60e-6 + 40e-6 * i / (n / 4)), 10e-6});
    }
  }
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-95e-6, 95e-6);
  for (int k = 0; k < 300; ++k) {
    const Vec2 p{u(rng), u(rng)};
    double best = 1e9;
    for (const Vec2& c : curve) best = std::min(best, (c - p).norm());
    EXPECT_NEAR(std::abs(signed_distance(p, kPool)), best, 2e-8) << p.x << ", " << p.y;
    const Projection pr = closest_point(p, kPool);
    EXPECT_NEAR((pr.point - p).norm(), best, 2e-8);
    EXPECT_NEAR(signed_distance(pr.point, kPool), 0.0, 1e-12);
  }
}

TEST(SignedDistance, GradientIsUnitAndConsistent) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-95e-6, 95e-6);
  const double h = 1e-10;
  for (int k = 0; k < 300; ++k) {
    const Vec2 p{u(rng), u(rng)};
    const Vec2 g = distance_gradient(p, kPool);
    EXPECT_NEAR(g.norm(), 1.0, 1e-12);
    const double fd_x = (signed_distance({p.x + h, p.y}, kPool) - signed_distance({p.x - h, p.y}, kPool)) / (2 * h);
    const double fd_y = (signed_distance({p.x, p.y + h}, kPool) - signed_distance({p.x, p.y - h}, kPool)) / (2 * h);
    if (std::abs(p.x) > 1e-7 && std::abs(p.y) > 1e-7) {
      EXPECT_NEAR(g.x, fd_x, 1e-4);
      EXPECT_NEAR(g.y, fd_y, 1e-4);
    }
  }
}

TEST(SignedDistance, ProjectionNormalPointsIntoLiquid) {
  const Projection bottom = closest_point({0.0, -40e-6}, kPool);
  EXPECT_EQ(bottom.branch, InterfaceBranch::Arc);
  EXPECT_NEAR(bottom.point.y, -50e-6, 1e-18);
  EXPECT_NEAR(bottom.normal.y, -1.0, 1e-15);
  const Projection flat = closest_point({90e-6, 20e-6}, kPool);
  EXPECT_EQ(flat.branch, InterfaceBranch::FlatSurface);
  EXPECT_NEAR(flat.point.y, 10e-6, 1e-18);
}

TEST(Geometry, ValidatesDimensions) {
  EXPECT_THROW(InterfaceGeometry::melt_pool(80e-6, 30e-6, 100e-6), InvalidInput);
  EXPECT_THROW(InterfaceGeometry::planar(0.0), InvalidInput);
  EXPECT_THROW(signed_distance({std::nan(""), 0.0}, kPool), InvalidInput);
}
