// csfbench: run, sweep and verify the CSF heat-transfer benchmarks.
//
//   csfbench run       --config run.json   [--out DIR] [--workers N]
//   csfbench sweep     --config sweep.json [--out DIR] [--workers N] [--budget-minutes M]
//   csfbench reference --config run.json
//   csfbench verify
//
// Exit codes: 0 success, 1 invalid input, 2 solver failure.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <optional>

#include <CLI11.hpp>

#include "csf/config.hpp"
#include "csf/format.hpp"
#include "csf/report.hpp"
#include "verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitSolver = 2;

struct Common {
  std::string config;
  std::string out;
  int workers = 0;
  double budget_minutes = 0.0;
};

csf::RunConfig load(const Common& c) {
  csf::RunConfig cfg = csf::load_config(c.config);
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (c.workers > 0) cfg.workers = c.workers;
  return cfg;
}

int execute(const csf::RunConfig& cfg, const std::vector<csf::RunSpec>& specs, double budget_minutes) {
  const std::filesystem::path out = cfg.output_dir;
  csf::ensure_writable_directory(out);  // before any solve
  csf::ReferenceStore store(cfg.cache_dir);
  csf::BenchmarkOptions opts = cfg.options();
  opts.references = &store;

  const auto start = std::chrono::system_clock::now();
  const auto clock0 = std::chrono::steady_clock::now();
  std::vector<std::optional<csf::FieldDump>> fields(specs.size());
  csf::SweepControl control;
  control.workers = static_cast<std::size_t>(cfg.workers);
  control.resume_dir = out;
  if (budget_minutes > 0.0) {
    control.should_stop = [clock0, budget_minutes] {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - clock0).count();
      return elapsed > 60.0 * budget_minutes;
    };
  }
  control.on_row = [&](const csf::RunResult& r, std::size_t i) {
    fields[i] = r.field;
    const csf::ReportRow& row = r.row;
    std::fprintf(stderr, "[%zu/%zu] %s %s %s eps=%s n_i=%d  L2=%s recoil_err=%s  %s (%.1fs)\n",
                 i + 1, specs.size(), row.benchmark.c_str(), row.delta_case.c_str(),
                 row.method.c_str(), csf::format_double(row.eps).c_str(), row.n_i,
                 csf::format_double(row.l2_error).c_str(),
                 csf::format_double(row.recoil_error).c_str(), row.status.c_str(),
                 row.wall_seconds);
  };
  const csf::SweepReport report = csf::sweep(specs, opts, control);

  csf::ReportMeta meta;
  meta.config = csf::to_json(cfg);
  meta.start = start;
  meta.end = std::chrono::system_clock::now();
  if (specs.size() > 0 && specs.front().benchmark == csf::BenchmarkId::B4) {
    meta.notes.push_back(
        "B4 uses a uniform Cartesian mesh (no local refinement); half domain mirrored at x = 0");
  }
  csf::write_report(out, report.rows, meta, fields);
  std::cout << (out / "report.csv").string() << '\n';

  bool failed = false;
  for (const auto& row : report.rows) failed = failed || row.status == "failed";
  return failed ? kExitSolver : kExitOk;
}

int cmd_run(const Common& c) {
  const csf::RunConfig cfg = load(c);
  if (cfg.eps <= 0.0 || cfg.n_i <= 0) {
    throw csf::InvalidInput("config key 'eps'/'n_i': run needs a single eps and n_i");
  }
  return execute(cfg, {cfg.run_spec()}, 0.0);
}

int cmd_sweep(const Common& c) {
  const csf::RunConfig cfg = load(c);
  return execute(cfg, csf::expand(cfg.sweep_grid()), c.budget_minutes);
}

int cmd_reference(const Common& c) {
  const csf::RunConfig cfg = load(c);
  if (cfg.benchmark == csf::BenchmarkId::B4) {
    throw csf::InvalidInput("config key 'benchmark': B4 has no sharp 1D reference");
  }
  csf::ReferenceSpec spec;
  spec.cooling = cfg.benchmark == csf::BenchmarkId::B1   ? csf::CoolingVariant::None
                 : cfg.benchmark == csf::BenchmarkId::B2 ? csf::CoolingVariant::WithEnthalpy
                                                          : csf::CoolingVariant::WithoutEnthalpy;
  spec.convection = cfg.benchmark == csf::BenchmarkId::B3;
  spec.t_end = cfg.t_end;
  spec.materials = cfg.materials;
  spec.policy = cfg.reference_policy;
  csf::ReferenceStore store(cfg.cache_dir);
  const csf::ReferenceSolution sol = store.get(spec);
  std::cout << store.file_for(spec).string() << "\n"
            << "interface_temperature " << csf::format_double(sol.interface_temperature) << "\n"
            << "nodes " << sol.temperature.values.size() << "\n"
            << (sol.from_cache ? "cached" : "computed") << " in "
            << csf::format_double(sol.wall_seconds) << " s\n";
  return sol.temperature.all_finite() ? kExitOk : kExitSolver;
}

int cmd_verify() {
  bool ok = true;
  for (const auto& check : csf::verify::all_scalar_checks()) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    ok = ok && check.passed;
  }
  return ok ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSF two-phase heat transfer benchmarks"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool budget) {
    sub->add_option("--config", common.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "output directory (overrides output_dir)");
    sub->add_option("--workers", common.workers, "worker threads (overrides workers)")
        ->check(CLI::PositiveNumber);
    if (budget) {
      sub->add_option("--budget-minutes", common.budget_minutes,
                      "stop starting new rows after this wall time")
          ->check(CLI::NonNegativeNumber);
    }
  };
  CLI::App* run = app.add_subcommand("run", "solve one benchmark row");
  add_common(run, false);
  CLI::App* sweep = app.add_subcommand("sweep", "solve a parameter grid");
  add_common(sweep, true);
  CLI::App* reference = app.add_subcommand("reference", "build and cache the sharp reference");
  add_common(reference, false);
  app.add_subcommand("verify", "scalar oracle and property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  try {
    if (*run) return cmd_run(common);
    if (*sweep) return cmd_sweep(common);
    if (*reference) return cmd_reference(common);
    return cmd_verify();
  } catch (const csf::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const csf::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
