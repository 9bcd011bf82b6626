// Sharp-interface 1D reference solutions with an on-disk cache keyed by a
// content hash of the scenario.
#pragma once

#include <cstdint>
#include <filesystem>
#include <future>
#include <map>
#include <mutex>
#include <string>

#include "csf/evaporation.hpp"
#include "csf/materials.hpp"
#include "csf/mesh.hpp"

namespace csf {

enum class ReferencePolicy { Exact, Budgeted };

std::string_view to_string(ReferencePolicy p);
ReferencePolicy parse_reference_policy(std::string_view name);

/// Element count over [-a, a] and time step of a policy.
struct ReferenceResolution {
  std::size_t elements = 0;
  double dt = 0.0;
};
ReferenceResolution reference_resolution(ReferencePolicy p, double half_width);

/// Physics of a 1D reference: constant laser flux plus optional cooling and
/// evaporation-driven convection.
struct ReferenceSpec {
  double half_width = 100e-6;
  double laser_flux = 1e10;
  CoolingVariant cooling = CoolingVariant::None;
  bool convection = false;
  double initial_temperature = 500.0;
  double t_end = 1e-5;
  MaterialSet materials;
  ReferencePolicy policy = ReferencePolicy::Budgeted;

  /// Canonical text of every input that affects the solution.
  std::string canonical() const;
};

struct ReferenceSolution {
  Field1D temperature;
  double interface_temperature = 0.0;
  double wall_seconds = 0.0;
  bool from_cache = false;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view text);

/// Runs the sharp reference solver (no caching).
ReferenceSolution compute_reference(const ReferenceSpec& spec);

/// Thread-safe memory + disk cache. Concurrent requests for the same key
/// share one computation.
class ReferenceStore {
 public:
  /// An empty directory disables the disk layer.
  explicit ReferenceStore(std::filesystem::path directory = {});

  ReferenceSolution get(const ReferenceSpec& spec);
  std::filesystem::path file_for(const ReferenceSpec& spec) const;

 private:
  bool load(const ReferenceSpec& spec, ReferenceSolution& out) const;
  void save(const ReferenceSpec& spec, const ReferenceSolution& sol) const;

  std::filesystem::path dir_;
  std::mutex mutex_;
  std::map<std::string, std::shared_future<ReferenceSolution>> memory_;
};

}  // namespace csf
