// Benchmark scenarios B1-B4, single runs and parameter sweeps.
//   B1  1D laser heating of a static surface (constant flux 1e10 W/m^2)
//   B2  B1 + evaporative cooling including the vapor enthalpy
//   B3  B1 + latent-heat cooling + evaporation-driven convection
//   B4  2D fixed melt-pool surface with a Gaussian laser and cooling
#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csf/delta.hpp"
#include "csf/evaporation.hpp"
#include "csf/materials.hpp"
#include "csf/reference.hpp"
#include "csf/solver2d.hpp"

namespace csf {

enum class BenchmarkId { B1, B2, B3, B4 };
enum class RunMode { Transient, Steady };

std::string_view to_string(BenchmarkId id);
BenchmarkId parse_benchmark(std::string_view name);
std::string_view to_string(RunMode m);
RunMode parse_run_mode(std::string_view name);

inline constexpr double kDomainHalfWidth = 100e-6;
inline constexpr double kLaserFlux1D = 1e10;
inline constexpr double kAmbientTemperature = 500.0;
inline constexpr double kMeltPoolCenterRadius = 50e-6;
inline constexpr double kMeltPoolBeadRadius = 10e-6;

/// One parameter point.
struct RunSpec {
  BenchmarkId benchmark = BenchmarkId::B1;
  DeltaCase delta_case = DeltaCase::Classical;
  EvalMethod method = EvalMethod::CE;
  double eps = 0.0;
  int n_i = 0;
  double dt = 1e-9;
  double t_end = 1e-5;
  RunMode mode = RunMode::Transient;
  MaterialSet materials;
  /// 1D: element size the graded mesh grows to away from the interface.
  double far_field_h = 0.05e-6;

  void validate() const;
  /// Canonical identity used for de-duplication and resume markers.
  std::string key() const;
};

struct BenchmarkOptions {
  ReferencePolicy policy = ReferencePolicy::Exact;
  /// Shared reference cache; created on demand when null.
  ReferenceStore* references = nullptr;
  /// B4: mesh only x >= 0 and mirror the integrals.
  bool half_domain = true;
  LinearSolverKind solver_2d = LinearSolverKind::Direct;
  bool keep_field = false;
};

/// Nodal dump of a solved field.
struct FieldDump {
  std::vector<double> x;
  std::vector<double> y;  // empty in 1D
  std::vector<double> temperature;
  std::vector<double> chi;
  std::vector<double> distance;
};

struct ReportRow {
  std::string benchmark;
  std::string delta_case;
  std::string method;
  std::string mode;
  double eps = 0.0;
  int n_i = 0;
  double h = 0.0;
  std::size_t n_elements = 0;
  double l2_error = std::nan("");
  double recoil = std::nan("");
  double recoil_reference = std::nan("");
  double recoil_error = std::nan("");
  double interface_temperature = std::nan("");
  double reference_interface_temperature = std::nan("");
  double peak_temperature = std::nan("");
  double peak_x = std::nan("");
  double peak_y = std::nan("");
  double peak_distance = std::nan("");
  double gas_peclet = std::nan("");
  double fitted_order = std::nan("");
  double fitted_order_recoil = std::nan("");
  std::size_t steps = 0;
  double wall_seconds = 0.0;
  std::string status = "ok";
  std::string message;
  std::string key;
};

struct RunResult {
  ReportRow row;
  std::optional<FieldDump> field;
};

/// Builds, solves and scores one run. Solver failures are reported in the
/// row (status "failed") rather than thrown; invalid specs throw.
RunResult run_benchmark(const RunSpec& spec, const BenchmarkOptions& options);

/// Cartesian grid over cases x methods x eps x n_i around a base spec.
struct SweepGrid {
  RunSpec base;
  std::vector<DeltaCase> cases;
  std::vector<EvalMethod> methods;
  std::vector<double> eps;
  std::vector<int> n_i;
};

/// Deterministic expansion (cases, methods, eps, n_i nesting, input order)
/// with duplicate keys removed.
std::vector<RunSpec> expand(const SweepGrid& grid);

struct SweepReport {
  std::vector<ReportRow> rows;
};

struct SweepControl {
  std::size_t workers = 1;
  /// When non-empty, finished rows are stored here and reused on restart.
  std::filesystem::path resume_dir;
  /// Called (serialized) after every finished row.
  std::function<void(const RunResult&, std::size_t index)> on_row;
  /// Polled before each row starts; once true, remaining rows are reported
  /// with status "skipped".
  std::function<bool()> should_stop;
};

SweepReport sweep(const std::vector<RunSpec>& specs, const BenchmarkOptions& options,
                  const SweepControl& control = {});
inline SweepReport sweep(const SweepGrid& grid, const BenchmarkOptions& options,
                         const SweepControl& control = {}) {
  return sweep(expand(grid), options, control);
}

/// Fills fitted_order / fitted_order_recoil of every row whose
/// (benchmark, case, method, mode, n_i) group has at least three distinct eps
/// with positive errors.
void fill_fitted_orders(SweepReport& report);

}  // namespace csf
