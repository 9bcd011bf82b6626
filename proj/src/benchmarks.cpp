#include "csf/benchmarks.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "csf/format.hpp"
#include "csf/indicator.hpp"
#include "csf/metrics.hpp"
#include "csf/report.hpp"
#include "csf/solver1d.hpp"
#include "csf/thermal.hpp"

namespace csf {

namespace {

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

CoolingVariant cooling_of(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::B1: return CoolingVariant::None;
    case BenchmarkId::B2: return CoolingVariant::WithEnthalpy;
    case BenchmarkId::B3: return CoolingVariant::WithoutEnthalpy;
    case BenchmarkId::B4: return CoolingVariant::WithEnthalpy;
  }
  return CoolingVariant::None;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ReportRow blank_row(const RunSpec& spec) {
  ReportRow row;
  row.benchmark = std::string(to_string(spec.benchmark));
  row.delta_case = std::string(to_string(spec.delta_case));
  row.method = std::string(to_string(spec.method));
  row.mode = std::string(to_string(spec.mode));
  row.eps = spec.eps;
  row.n_i = spec.n_i;
  row.h = spec.eps / spec.n_i;
  row.key = spec.key();
  return row;
}

RunResult run_1d(const RunSpec& spec, const BenchmarkOptions& options, ReferenceStore& store) {
  RunResult result;
  ReportRow& row = result.row;
  row = blank_row(spec);

  const double a = kDomainHalfWidth;
  const double h_band = spec.eps / spec.n_i;
  auto mesh = std::make_shared<Mesh1D>(
      Mesh1D::interface_graded(a, spec.eps, spec.n_i, std::max(spec.far_field_h, h_band)));
  row.n_elements = mesh->n_elements();

  ThermalScenario1D s;
  s.mesh = mesh;
  s.materials = spec.materials;
  s.delta_case = spec.delta_case;
  s.eps = spec.eps;
  s.laser_flux = kLaserFlux1D;
  s.evaporation = EvaporationModel::from_materials(spec.materials, cooling_of(spec.benchmark),
                                                   spec.method);
  s.convection = spec.benchmark == BenchmarkId::B3;
  s.initial_temperature = kAmbientTemperature;
  s.boundary_temperature = kAmbientTemperature;
  s.dt = spec.dt;
  s.t_end = spec.t_end;
  HeatSolver1D solver(s);

  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport1D rep =
      spec.mode == RunMode::Steady ? solver.solve_steady() : solver.solve_transient();
  row.wall_seconds = seconds_since(t0);
  row.steps = rep.steps;
  row.interface_temperature = rep.interface_temperature;
  row.peak_temperature = rep.peak_temperature;
  row.peak_x = rep.peak_location;
  row.peak_distance = -rep.peak_location;

  if (!rep.temperature.all_finite()) {
    row.status = "failed";
    row.message = "non-finite temperature";
    return result;
  }

  if (spec.mode == RunMode::Steady) {
    const MaterialSet& m = spec.materials;
    const SteadyTent tent = steady_analytic_1d(kLaserFlux1D, a, m.k_gas, m.k_liquid,
                                               kAmbientTemperature);
    row.l2_error = l2_relative_error(rep.temperature, [&](double x) { return tent(x); });
    row.reference_interface_temperature = tent.t_max();
  } else {
    ReferenceSpec ref;
    ref.half_width = a;
    ref.laser_flux = kLaserFlux1D;
    ref.cooling = cooling_of(spec.benchmark);
    ref.convection = s.convection;
    ref.initial_temperature = kAmbientTemperature;
    ref.t_end = spec.t_end;
    ref.materials = spec.materials;
    ref.policy = options.policy;
    const ReferenceSolution sharp = store.get(ref);
    row.l2_error = l2_relative_error(rep.temperature, sharp.temperature);
    row.reference_interface_temperature = sharp.interface_temperature;
    if (spec.benchmark != BenchmarkId::B1) {
      const EvaporationModel& model = s.evaporation;
      row.recoil = recoil_l1(rep.temperature, InterfaceGeometry::planar(a), spec.eps, spec.method,
                             model, spec.materials.density());
      row.recoil_reference = recoil_pressure(sharp.interface_temperature, model);
      row.recoil_error = std::abs(row.recoil - row.recoil_reference) / row.recoil_reference;
    }
  }
  if (s.convection) row.gas_peclet = solver.gas_peclet(rep.max_mass_flux);

  if (options.keep_field) {
    FieldDump dump;
    dump.x = mesh->nodes();
    dump.temperature = rep.temperature.values;
    dump.chi = solver.indicator_field();
    dump.distance = solver.distance_field();
    result.field = std::move(dump);
  }
  return result;
}

RunResult run_2d(const RunSpec& spec, const BenchmarkOptions& options) {
  RunResult result;
  ReportRow& row = result.row;
  row = blank_row(spec);

  const double a = kDomainHalfWidth;
  const InterfaceGeometry geom =
      InterfaceGeometry::melt_pool(kMeltPoolCenterRadius, kMeltPoolBeadRadius, a);
  // Cells across the full width; even so that x = 0 is a grid line.
  auto n = static_cast<std::size_t>(std::llround(2.0 * a / (spec.eps / spec.n_i)));
  if (n % 2 == 1) ++n;
  row.h = 2.0 * a / static_cast<double>(n);
  std::shared_ptr<Mesh2D> mesh;
  if (options.half_domain) {
    mesh = std::make_shared<Mesh2D>(Mesh2D::uniform(0.0, a, n / 2, -a, a, n));
  } else {
    mesh = std::make_shared<Mesh2D>(Mesh2D::uniform(-a, a, n, -a, a, n));
  }
  row.n_elements = mesh->n_elements();

  ThermalScenario2D s;
  s.mesh = mesh;
  s.materials = spec.materials;
  s.delta_case = spec.delta_case;
  s.eps = spec.eps;
  s.geometry = geom;
  s.laser = LaserModel::gaussian(spec.materials);
  s.evaporation = EvaporationModel::from_materials(spec.materials, cooling_of(spec.benchmark),
                                                   spec.method);
  s.initial_temperature = kAmbientTemperature;
  s.boundary_temperature = kAmbientTemperature;
  s.dt = spec.dt;
  s.t_end = spec.t_end;
  s.solver = options.solver_2d;
  HeatSolver2D solver(s);

  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport2D rep = solver.solve_transient();
  row.wall_seconds = seconds_since(t0);
  row.steps = rep.steps;
  row.interface_temperature = rep.interface_temperature;
  row.peak_temperature = rep.peak_temperature;
  row.peak_x = rep.peak_location.x;
  row.peak_y = rep.peak_location.y;
  row.peak_distance = rep.peak_distance;
  if (!rep.temperature.all_finite()) {
    row.status = "failed";
    row.message = "non-finite temperature";
    return result;
  }
  row.recoil = recoil_l1(rep.temperature, geom, spec.eps, spec.method, s.evaporation,
                         spec.materials.density(), options.half_domain ? 2.0 : 1.0);

  if (options.keep_field) {
    FieldDump dump;
    dump.temperature = rep.temperature.values;
    dump.chi = solver.indicator_field();
    dump.distance = solver.distance_field();
    for (std::size_t i = 0; i < mesh->n_nodes(); ++i) {
      const Vec2 p = mesh->node(i);
      dump.x.push_back(p.x);
      dump.y.push_back(p.y);
    }
    result.field = std::move(dump);
  }
  return result;
}

}  // namespace

std::string_view to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::B1: return "B1";
    case BenchmarkId::B2: return "B2";
    case BenchmarkId::B3: return "B3";
    case BenchmarkId::B4: return "B4";
  }
  return "?";
}

BenchmarkId parse_benchmark(std::string_view name) {
  const std::string s = lower(name);
  if (s == "b1") return BenchmarkId::B1;
  if (s == "b2") return BenchmarkId::B2;
  if (s == "b3") return BenchmarkId::B3;
  if (s == "b4") return BenchmarkId::B4;
  throw InvalidInput("unknown benchmark '" + std::string(name) +
                     "'; expected one of {B1, B2, B3, B4}");
}

std::string_view to_string(RunMode m) { return m == RunMode::Steady ? "steady" : "transient"; }

RunMode parse_run_mode(std::string_view name) {
  const std::string s = lower(name);
  if (s == "steady") return RunMode::Steady;
  if (s == "transient") return RunMode::Transient;
  throw InvalidInput("unknown mode '" + std::string(name) +
                     "'; expected one of {transient, steady}");
}

void RunSpec::validate() const {
  require_positive(eps, "eps");
  if (eps > 0.5 * kDomainHalfWidth) {
    throw InvalidInput("eps must not exceed half the domain half-width (" +
                       format_double(0.5 * kDomainHalfWidth) + " m)");
  }
  if (n_i < 4) throw InvalidInput("n_i must be at least 4");
  require_positive(dt, "dt");
  require_positive(t_end, "t_end");
  require_positive(far_field_h, "far_field_h");
  if (mode == RunMode::Steady && benchmark != BenchmarkId::B1) {
    throw InvalidInput("steady mode is only defined for B1");
  }
  materials.validate();
}

std::string RunSpec::key() const {
  const MaterialSet& m = materials;
  std::ostringstream s;
  s << to_string(benchmark) << '|' << to_string(delta_case) << '|' << to_string(method) << '|'
    << to_string(mode) << "|eps=" << format_double(eps) << "|n_i=" << n_i
    << "|dt=" << format_double(dt) << "|t_end=" << format_double(t_end);
  if (benchmark != BenchmarkId::B4) s << "|far_h=" << format_double(far_field_h);
  const double vals[] = {m.k_gas, m.k_liquid, m.rho_gas, m.rho_liquid, m.cp_gas, m.cp_liquid,
                         m.absorptivity, m.boiling_temperature, m.latent_heat,
                         m.enthalpy_reference_temperature, m.molar_mass, m.sticking_constant,
                         m.ambient_pressure, m.laser_power, m.laser_radius};
  s << "|mat=";
  for (double v : vals) s << format_double(v) << ',';
  return s.str();
}

RunResult run_benchmark(const RunSpec& spec, const BenchmarkOptions& options) {
  spec.validate();
  std::unique_ptr<ReferenceStore> local;
  ReferenceStore* store = options.references;
  if (store == nullptr) {
    local = std::make_unique<ReferenceStore>();
    store = local.get();
  }
  try {
    return spec.benchmark == BenchmarkId::B4 ? run_2d(spec, options)
                                             : run_1d(spec, options, *store);
  } catch (const SolverError& e) {
    RunResult failed;
    failed.row = blank_row(spec);
    failed.row.status = "failed";
    failed.row.message = e.what();
    return failed;
  }
}

std::vector<RunSpec> expand(const SweepGrid& grid) {
  std::vector<RunSpec> out;
  std::set<std::string> seen;
  for (DeltaCase c : grid.cases) {
    for (EvalMethod m : grid.methods) {
      for (double e : grid.eps) {
        for (int n : grid.n_i) {
          RunSpec s = grid.base;
          s.delta_case = c;
          s.method = m;
          s.eps = e;
          s.n_i = n;
          if (seen.insert(s.key()).second) out.push_back(std::move(s));
        }
      }
    }
  }
  return out;
}

namespace {

std::filesystem::path marker_path(const std::filesystem::path& dir, const std::string& key) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
  return dir / "rows" / (std::string(buf) + ".json");
}

bool load_marker(const std::filesystem::path& file, const std::string& key, ReportRow& row) {
  std::ifstream in(file);
  if (!in) return false;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    ReportRow r = row_from_json(j);
    if (r.key != key) return false;
    row = std::move(r);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void save_marker(const std::filesystem::path& file, const ReportRow& row) {
  std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << row_to_json(row).dump(2) << '\n';
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace

SweepReport sweep(const std::vector<RunSpec>& specs, const BenchmarkOptions& options,
                  const SweepControl& control) {
  for (const RunSpec& s : specs) s.validate();
  SweepReport report;
  report.rows.resize(specs.size());

  std::unique_ptr<ReferenceStore> local;
  BenchmarkOptions opts = options;
  if (opts.references == nullptr) {
    local = std::make_unique<ReferenceStore>();
    opts.references = local.get();
  }

  std::atomic<std::size_t> next{0};
  std::mutex out_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      RunResult res;
      if (control.should_stop && control.should_stop()) {
        res.row = blank_row(specs[i]);
        res.row.status = "skipped";
        res.row.message = "time budget exhausted";
        std::lock_guard<std::mutex> lock(out_mutex);
        report.rows[i] = res.row;
        continue;
      }
      try {
        const std::string key = specs[i].key();
        const bool resumable = !control.resume_dir.empty();
        const auto marker = resumable ? marker_path(control.resume_dir, key)
                                      : std::filesystem::path{};
        if (!(resumable && load_marker(marker, key, res.row))) {
          res = run_benchmark(specs[i], opts);
          if (resumable) save_marker(marker, res.row);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(out_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(specs.size());
        return;
      }
      std::lock_guard<std::mutex> lock(out_mutex);
      report.rows[i] = res.row;
      if (control.on_row) control.on_row(res, i);
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, std::min(control.workers, specs.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  fill_fitted_orders(report);
  return report;
}

void fill_fitted_orders(SweepReport& report) {
  using Group = std::tuple<std::string, std::string, std::string, std::string, int>;
  std::map<Group, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ReportRow& r = report.rows[i];
    if (r.status != "ok") continue;
    groups[{r.benchmark, r.delta_case, r.method, r.mode, r.n_i}].push_back(i);
  }
  auto fit = [&](const std::vector<std::size_t>& idx, double ReportRow::*err) {
    std::map<double, double> pts;
    for (std::size_t i : idx) {
      const double e = report.rows[i].*err;
      if (std::isfinite(e) && e > 0.0) pts[report.rows[i].eps] = e;
    }
    if (pts.size() < 3) return std::nan("");
    return convergence_order({pts.begin(), pts.end()}).slope;
  };
  for (const auto& [group, idx] : groups) {
    const double order = fit(idx, &ReportRow::l2_error);
    const double order_recoil = fit(idx, &ReportRow::recoil_error);
    for (std::size_t i : idx) {
      report.rows[i].fitted_order = order;
      report.rows[i].fitted_order_recoil = order_recoil;
    }
  }
}

}  // namespace csf
