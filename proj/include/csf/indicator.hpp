// Smooth phase indicator and the regularized level-set <-> distance pair.
#pragma once

namespace csf {

/// Sine-based indicator: 0 in the gas (d <= -eps/2), 1 in the liquid
/// (d >= eps/2), C1 in between with chi(0) = 1/2.
double indicator(double d, double eps);

/// Regularized level set phi = tanh(3 d / eps).
double level_set_from_distance(double d, double eps);

/// Inverse of level_set_from_distance. |phi| is clamped to 1 - 1e-12 before
/// the logarithm so saturated values map to a large finite distance; values
/// with |phi| > 1 are rejected.
double distance_from_level_set(double phi, double eps);

inline constexpr double kLevelSetClamp = 1.0 - 1e-12;

}  // namespace csf
