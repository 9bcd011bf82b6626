#include "csf/reference.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "csf/format.hpp"
#include "csf/solver1d.hpp"

namespace csf {

std::string_view to_string(ReferencePolicy p) {
  return p == ReferencePolicy::Exact ? "exact" : "budgeted";
}

ReferencePolicy parse_reference_policy(std::string_view name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "exact") return ReferencePolicy::Exact;
  if (s == "budgeted") return ReferencePolicy::Budgeted;
  throw InvalidInput("unknown reference policy '" + std::string(name) +
                     "'; expected one of {exact, budgeted}");
}

ReferenceResolution reference_resolution(ReferencePolicy p, double half_width) {
  require_positive(half_width, "domain half-width");
  // Element sizes 1.5625e-3 um (exact) and 6.25e-3 um (budgeted).
  const double h = p == ReferencePolicy::Exact ? 1.5625e-9 : 6.25e-9;
  auto n = static_cast<std::size_t>(std::llround(2.0 * half_width / h));
  if (n % 2 == 1) ++n;  // keep a node at x = 0
  return {n, p == ReferencePolicy::Exact ? 1e-10 : 4e-10};
}

std::string ReferenceSpec::canonical() const {
  const MaterialSet& m = materials;
  std::ostringstream s;
  s << "sharp1d;v1;a=" << format_double(half_width) << ";q=" << format_double(laser_flux)
    << ";cooling=" << to_string(cooling) << ";convection=" << (convection ? 1 : 0)
    << ";T0=" << format_double(initial_temperature) << ";t_end=" << format_double(t_end)
    << ";policy=" << to_string(policy);
  const double vals[] = {m.k_gas, m.k_liquid, m.rho_gas, m.rho_liquid, m.cp_gas, m.cp_liquid,
                         m.boiling_temperature, m.latent_heat, m.enthalpy_reference_temperature,
                         m.molar_mass, m.sticking_constant, m.ambient_pressure};
  s << ";mat=";
  for (double v : vals) s << format_double(v) << ',';
  return s.str();
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ReferenceSolution compute_reference(const ReferenceSpec& spec) {
  const ReferenceResolution res = reference_resolution(spec.policy, spec.half_width);
  ThermalScenario1D s;
  s.mesh = std::make_shared<Mesh1D>(Mesh1D::uniform(-spec.half_width, spec.half_width, res.elements));
  s.materials = spec.materials;
  s.source_mode = SourceMode::SharpNodal;
  s.laser_flux = spec.laser_flux;
  s.evaporation = EvaporationModel::from_materials(spec.materials, spec.cooling, EvalMethod::IV);
  s.convection = spec.convection;
  s.initial_temperature = spec.initial_temperature;
  s.boundary_temperature = spec.initial_temperature;
  s.dt = res.dt;
  s.t_end = spec.t_end;
  HeatSolver1D solver(s);
  const SolveReport1D r = solver.solve_transient();
  ReferenceSolution out;
  out.temperature = r.temperature;
  out.interface_temperature = r.interface_temperature;
  out.wall_seconds = r.wall_seconds;
  return out;
}

ReferenceStore::ReferenceStore(std::filesystem::path directory) : dir_(std::move(directory)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::filesystem::path ReferenceStore::file_for(const ReferenceSpec& spec) const {
  char name[40];
  std::snprintf(name, sizeof(name), "ref_%016llx.bin",
                static_cast<unsigned long long>(fnv1a64(spec.canonical())));
  return dir_ / name;
}

namespace {

constexpr char kMagic[8] = {'C', 'S', 'F', 'R', 'E', 'F', '1', '\n'};

template <class T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool read_pod(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

}  // namespace

bool ReferenceStore::load(const ReferenceSpec& spec, ReferenceSolution& out) const {
  if (dir_.empty()) return false;
  std::ifstream in(file_for(spec), std::ios::binary);
  if (!in) return false;
  char magic[8];
  if (!in.read(magic, 8) || std::string_view(magic, 8) != std::string_view(kMagic, 8)) return false;
  std::uint64_t len = 0;
  if (!read_pod(in, len) || len > (1u << 20)) return false;
  std::string key(len, '\0');
  if (!in.read(key.data(), static_cast<std::streamsize>(len)) || key != spec.canonical()) return false;
  std::uint64_t n = 0;
  if (!read_pod(in, n) || n < 2 || n > (1ULL << 28)) return false;
  std::vector<double> nodes(n), values(n);
  if (!in.read(reinterpret_cast<char*>(nodes.data()), static_cast<std::streamsize>(n * sizeof(double)))) return false;
  if (!in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(n * sizeof(double)))) return false;
  double tg = 0.0, wall = 0.0;
  if (!read_pod(in, tg) || !read_pod(in, wall)) return false;
  out.temperature = Field1D(std::make_shared<Mesh1D>(std::move(nodes)), std::move(values));
  out.interface_temperature = tg;
  out.wall_seconds = wall;
  out.from_cache = true;
  return true;
}

void ReferenceStore::save(const ReferenceSpec& spec, const ReferenceSolution& sol) const {
  if (dir_.empty()) return;
  const std::filesystem::path target = file_for(spec);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw InvalidInput("cannot write reference cache file " + tmp.string());
    os.write(kMagic, 8);
    const std::string key = spec.canonical();
    write_pod(os, static_cast<std::uint64_t>(key.size()));
    os.write(key.data(), static_cast<std::streamsize>(key.size()));
    const auto& nodes = sol.temperature.mesh->nodes();
    const auto& values = sol.temperature.values;
    write_pod(os, static_cast<std::uint64_t>(nodes.size()));
    os.write(reinterpret_cast<const char*>(nodes.data()), static_cast<std::streamsize>(nodes.size() * sizeof(double)));
    os.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
    write_pod(os, sol.interface_temperature);
    write_pod(os, sol.wall_seconds);
  }
  std::filesystem::rename(tmp, target);
}

ReferenceSolution ReferenceStore::get(const ReferenceSpec& spec) {
  const std::string key = spec.canonical();
  std::promise<ReferenceSolution> promise;
  std::shared_future<ReferenceSolution> future;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memory_.find(key);
    if (it != memory_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      memory_.emplace(key, future);
      owner = true;
    }
  }
  if (!owner) return future.get();
  try {
    ReferenceSolution sol;
    if (!load(spec, sol)) {
      sol = compute_reference(spec);
      save(spec, sol);
    }
    promise.set_value(sol);
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard<std::mutex> lock(mutex_);
    memory_.erase(key);
  }
  return future.get();
}

}  // namespace csf
