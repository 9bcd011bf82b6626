// JSON run configuration (schema version 1).
//
//   {"schema_version": 1, "benchmark": "B1", "case": "V1", "method": "CE",
//    "eps": 6e-6, "n_i": 16, "dt": 1e-9, "t_end": 1e-5, "mode": "transient",
//    "materials": {"k_liquid": 28.63}, "output_dir": "out", "workers": 1,
//    "reference_policy": "exact", "cache_dir": "ref_cache",
//    "far_field_h": 5e-8, "dump_fields": false, "solver_2d": "direct",
//    "half_domain": true,
//    "sweep": {"cases": ["classical", "V1"], "methods": ["CE"],
//              "eps": [6e-6, 3e-6], "n_i": [16, 64]}}
//
// SI units throughout. Unknown keys are rejected.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csf/benchmarks.hpp"

namespace csf {

inline constexpr int kConfigSchemaVersion = 1;

struct SweepBlock {
  std::vector<DeltaCase> cases;
  std::vector<EvalMethod> methods;
  std::vector<double> eps;
  std::vector<int> n_i;
  bool operator==(const SweepBlock&) const = default;
};

struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  BenchmarkId benchmark = BenchmarkId::B1;
  DeltaCase delta_case = DeltaCase::Classical;
  EvalMethod method = EvalMethod::CE;
  double eps = 0.0;  // 0 = unset (allowed only with a sweep block)
  int n_i = 0;
  double dt = 1e-9;
  double t_end = 1e-5;
  RunMode mode = RunMode::Transient;
  MaterialSet materials;
  std::string output_dir = "out";
  int workers = 1;
  ReferencePolicy reference_policy = ReferencePolicy::Exact;
  std::string cache_dir = "ref_cache";
  double far_field_h = 0.05e-6;
  bool dump_fields = false;
  LinearSolverKind solver_2d = LinearSolverKind::Direct;
  bool half_domain = true;
  std::optional<SweepBlock> sweep;

  /// The single run described by the top-level fields.
  RunSpec run_spec() const;
  /// Sweep grid; the top-level fields provide the defaults of empty axes.
  SweepGrid sweep_grid() const;
  BenchmarkOptions options() const;
};

bool operator==(const MaterialSet& a, const MaterialSet& b);
bool operator==(const RunConfig& a, const RunConfig& b);

/// Validates and fills defaults. Errors name the offending key.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

}  // namespace csf
