#include "csf/delta.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "csf/indicator.hpp"
#include "csf/types.hpp"

namespace csf {

namespace {

void require_fraction(double chi) {
  if (!std::isfinite(chi) || chi < 0.0 || chi > 1.0) {
    throw InvalidInput("indicator value must lie in [0, 1]");
  }
}

void require_positive_pair(PhasePair p, const char* what) {
  require_positive(p.gas, what);
  require_positive(p.liquid, what);
}

// log(r) / t and (t - log(r)) / t^2 with t = r - 1; series near t = 0 where
// the closed forms lose digits to cancellation. log(r) rather than log1p(t)
// keeps full precision when r is tiny.
constexpr double kSeriesCutoff = 1e-2;

double log_ratio_term(double r) {
  const double t = r - 1.0;
  if (std::abs(t) < kSeriesCutoff) {
    double sum = 0.0;
    double pw = 1.0;
    for (int k = 0; k < 16; ++k) {
      sum += pw / (k + 1);
      pw *= -t;
    }
    return sum;
  }
  return std::log(r) / t;
}

double log_remainder_term(double r) {
  const double t = r - 1.0;
  if (std::abs(t) < kSeriesCutoff) {
    double sum = 0.0;
    double pw = 1.0;
    for (int k = 0; k < 16; ++k) {
      sum += pw / (k + 2);
      pw *= -t;
    }
    return sum;
  }
  return (t - std::log(r)) / (t * t);
}

// integral_0^1 of the harmonic mean; with t = a_g / a_l - 1 this is
// a_g * log1p(t) / t.
double harmonic_integral(PhasePair a) {
  return a.gas * log_ratio_term(a.gas / a.liquid);
}

// integral_0^1 u * harmonic mean(u) du = a_g * (t - log1p(t)) / t^2.
double harmonic_first_moment(PhasePair a) {
  return a.gas * log_remainder_term(a.gas / a.liquid);
}

}  // namespace

double interp_arithmetic(PhasePair pair, double chi) {
  require_finite(pair.gas, "gas value");
  require_finite(pair.liquid, "liquid value");
  require_fraction(chi);
  return pair.gas * (1.0 - chi) + pair.liquid * chi;
}

double interp_harmonic(PhasePair pair, double chi) {
  require_positive_pair(pair, "harmonic phase value");
  require_fraction(chi);
  return 1.0 / ((1.0 - chi) / pair.gas + chi / pair.liquid);
}

std::string_view to_string(DeltaCase c) {
  switch (c) {
    case DeltaCase::Classical: return "classical";
    case DeltaCase::V1: return "V1";
    case DeltaCase::V2: return "V2";
    case DeltaCase::V3: return "V3";
    case DeltaCase::V4: return "V4";
  }
  return "classical";
}

DeltaCase parse_delta_case(std::string_view name) {
  std::string lower;
  for (char ch : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "classical") return DeltaCase::Classical;
  if (lower == "v1") return DeltaCase::V1;
  if (lower == "v2") return DeltaCase::V2;
  if (lower == "v3") return DeltaCase::V3;
  if (lower == "v4") return DeltaCase::V4;
  throw InvalidInput("unknown case '" + std::string(name) +
                     "'; expected one of {classical, V1, V2, V3, V4}");
}

InterpolationCase InterpolationCase::make(DeltaCase kind, PhasePair rho, PhasePair cp) {
  InterpolationCase c;
  c.kind = kind;
  switch (kind) {
    case DeltaCase::Classical:
    case DeltaCase::V1:
    case DeltaCase::V2:
      c.alpha = {rho.gas * cp.gas, rho.liquid * cp.liquid};
      break;
    case DeltaCase::V3:
    case DeltaCase::V4:
      c.alpha = rho;
      c.beta = cp;
      break;
  }
  c.validate();
  return c;
}

InterpolationCase InterpolationCase::density_scaled(PhasePair rho) {
  InterpolationCase c;
  c.kind = DeltaCase::V1;
  c.alpha = rho;
  c.validate();
  return c;
}

double InterpolationCase::weight(double chi) const {
  switch (kind) {
    case DeltaCase::Classical: require_fraction(chi); return 1.0;
    case DeltaCase::V1: return interp_arithmetic(alpha, chi);
    case DeltaCase::V2: return interp_harmonic(alpha, chi);
    case DeltaCase::V3: return interp_arithmetic(alpha, chi) * interp_arithmetic(beta, chi);
    case DeltaCase::V4: return interp_harmonic(alpha, chi) * interp_arithmetic(beta, chi);
  }
  return 1.0;
}

double InterpolationCase::heat_capacity(double chi) const {
  if (kind == DeltaCase::Classical) return interp_arithmetic(alpha, chi);
  return weight(chi);
}

void InterpolationCase::validate() const {
  require_positive_pair(alpha, "interpolated phase value");
  if (kind == DeltaCase::V3 || kind == DeltaCase::V4) {
    require_positive_pair(beta, "second interpolated phase value");
  }
}

double weight_integral(const InterpolationCase& c) {
  c.validate();
  const PhasePair a = c.alpha;
  const PhasePair b = c.beta;
  switch (c.kind) {
    case DeltaCase::Classical: return 1.0;
    case DeltaCase::V1: return 0.5 * (a.gas + a.liquid);
    case DeltaCase::V2: return harmonic_integral(a);
    case DeltaCase::V3:
      return (2.0 * a.gas * b.gas + a.gas * b.liquid + a.liquid * b.gas +
              2.0 * a.liquid * b.liquid) / 6.0;
    case DeltaCase::V4:
      return b.gas * harmonic_integral(a) + (b.liquid - b.gas) * harmonic_first_moment(a);
  }
  return 1.0;
}

CorrectionFactor correction_factor(const InterpolationCase& c) {
  const double integral = weight_integral(c);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw InvalidInput("weight integral must be finite and positive");
  }
  return {1.0 / integral};
}

double delta_classical(double d, double eps) {
  require_finite(d, "signed distance");
  require_positive(eps, "interface thickness");
  if (std::abs(d) >= 0.5 * eps) return 0.0;
  return (1.0 + std::cos(2.0 * kPi * d / eps)) / eps;
}

double delta_scaled(const InterpolationCase& c, double d, double eps) {
  return ScaledDelta(c)(d, eps);
}

ScaledDelta::ScaledDelta(const InterpolationCase& c)
    : case_(c), correction_(correction_factor(c).value) {}

double ScaledDelta::operator()(double d, double eps) const {
  const double base = delta_classical(d, eps);
  if (base == 0.0) return 0.0;
  return base * case_.weight(indicator(d, eps)) * correction_;
}

double temperature_rate_shape(const InterpolationCase& c, double q, double d, double eps) {
  return temperature_rate_shape(c, q, d, eps, c.heat_capacity(indicator(d, eps)));
}

double temperature_rate_shape(const InterpolationCase& c, double q, double d, double eps,
                              double cv_eff) {
  require_finite(q, "interface flux");
  require_positive(cv_eff, "effective heat capacity");
  if (q == 0.0) return 0.0;
  return q * delta_scaled(c, d, eps) / cv_eff;
}

}  // namespace csf
