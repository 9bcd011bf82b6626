// Regularized delta functions: the classical one (the derivative of the
// indicator) and parameter-scaled variants weighted by an interpolated phase
// property and renormalized to unit integral.
#pragma once

#include <string>
#include <string_view>

#include "csf/types.hpp"

namespace csf {

/// Gas/liquid values of one material property.
struct PhasePair {
  double gas = 1.0;
  double liquid = 1.0;

  bool operator==(const PhasePair&) const = default;
};

double interp_arithmetic(PhasePair pair, double chi);
double interp_harmonic(PhasePair pair, double chi);

/// Heat-capacity interpolation type and the matching delta function:
///   Classical  c_v = (rho cp)_a,        delta = delta_classical
///   V1         c_v = (rho cp)_a,        weight (rho cp)_a
///   V2         c_v = (rho cp)_h,        weight (rho cp)_h
///   V3         c_v = rho_a * cp_a,      weight rho_a * cp_a
///   V4         c_v = rho_h * cp_a,      weight rho_h * cp_a
enum class DeltaCase { Classical, V1, V2, V3, V4 };

std::string_view to_string(DeltaCase c);
/// Accepts "classical", "V1".."V4" (case-insensitive). Throws InvalidInput
/// listing the valid names otherwise.
DeltaCase parse_delta_case(std::string_view name);

struct InterpolationCase {
  DeltaCase kind = DeltaCase::Classical;
  /// rho*cp for Classical/V1/V2; rho for V3/V4.
  PhasePair alpha;
  /// cp for V3/V4; unused otherwise.
  PhasePair beta;

  /// Builds the case from per-phase density and specific heat.
  static InterpolationCase make(DeltaCase kind, PhasePair rho, PhasePair cp);
  /// Density-scaled delta used for the recoil force: arithmetic weight rho.
  static InterpolationCase density_scaled(PhasePair rho);

  /// Interpolated weight w(chi) multiplying the classical delta (1 for
  /// Classical).
  double weight(double chi) const;
  /// Effective volume-specific heat capacity c_v(chi) of this case.
  double heat_capacity(double chi) const;
  void validate() const;
};

struct CorrectionFactor {
  double value = 1.0;  // 1 / integral_0^1 w(u) du
};

/// Integral of the weight over the unit interval, in closed form.
double weight_integral(const InterpolationCase& c);
CorrectionFactor correction_factor(const InterpolationCase& c);

/// (1 + cos(2 pi d / eps)) / eps on |d| < eps/2, zero elsewhere.
double delta_classical(double d, double eps);

/// delta_classical(d) * w(chi(d)) * c.
double delta_scaled(const InterpolationCase& c, double d, double eps);

/// Parameter-scaled delta with its correction factor computed once.
class ScaledDelta {
 public:
  explicit ScaledDelta(const InterpolationCase& c);

  double operator()(double d, double eps) const;
  double correction() const { return correction_; }
  const InterpolationCase& interpolation() const { return case_; }

 private:
  InterpolationCase case_;
  double correction_;
};

/// Temperature rate q * delta_i(d) / c_v(chi(d)) induced by a CSF flux when
/// conduction is neglected; uses the case's own heat capacity.
double temperature_rate_shape(const InterpolationCase& c, double q, double d, double eps);
/// Same with an explicitly supplied effective heat capacity at d.
double temperature_rate_shape(const InterpolationCase& c, double q, double d, double eps,
                              double cv_eff);

}  // namespace csf
