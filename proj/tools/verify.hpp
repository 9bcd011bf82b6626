// Scalar property / oracle checks over the delta and evaporation models,
// shared by `csfbench verify` and the test suite.
#pragma once

#include <string>
#include <vector>

namespace csf::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// |integral of delta - 1| over random phase pairs (ratios 1e-6..1e6) for
/// every delta case and the density-scaled delta.
Check delta_unit_integral(int draws = 50, unsigned seed = 20240611u);
/// q * delta_i / c_v,eff is a constant multiple of delta_classical.
Check heat_capacity_cancellation();
Check recoil_at_boiling_point();
Check mass_flux_oracle();
Check cooling_variants_coincide();
Check evaporation_monotone();
Check level_set_round_trip();

std::vector<Check> all_scalar_checks();

}  // namespace csf::verify
