#include "csf/indicator.hpp"

#include <algorithm>
#include <cmath>

#include "csf/types.hpp"

namespace csf {

double indicator(double d, double eps) {
  require_finite(d, "signed distance");
  require_positive(eps, "interface thickness");
  if (d <= -0.5 * eps) return 0.0;
  if (d >= 0.5 * eps) return 1.0;
  const double s = d / eps;
  const double chi = 0.5 + s + std::sin(2.0 * kPi * s) / (2.0 * kPi);
  // Round-off can push the value a hair outside [0, 1] near the band edges.
  return chi < 0.0 ? 0.0 : (chi > 1.0 ? 1.0 : chi);
}

double level_set_from_distance(double d, double eps) {
  require_finite(d, "signed distance");
  require_positive(eps, "interface thickness");
  return std::tanh(3.0 * d / eps);
}

double distance_from_level_set(double phi, double eps) {
  require_finite(phi, "level set value");
  require_positive(eps, "interface thickness");
  if (std::abs(phi) > 1.0) {
    throw InvalidInput("level set value must satisfy |phi| <= 1");
  }
  const double p = std::clamp(phi, -kLevelSetClamp, kLevelSetClamp);
  // atanh(p) == 0.5 * ln((1 + p) / (1 - p)), accurate near zero.
  return eps / 3.0 * std::atanh(p);
}

}  // namespace csf
