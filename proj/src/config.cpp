#include "csf/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace csf {

namespace {

using Json = nlohmann::json;

struct MaterialField {
  const char* name;
  double MaterialSet::*member;
};

const std::vector<MaterialField>& material_fields() {
  static const std::vector<MaterialField> f = {
      {"k_gas", &MaterialSet::k_gas},
      {"k_liquid", &MaterialSet::k_liquid},
      {"rho_gas", &MaterialSet::rho_gas},
      {"rho_liquid", &MaterialSet::rho_liquid},
      {"cp_gas", &MaterialSet::cp_gas},
      {"cp_liquid", &MaterialSet::cp_liquid},
      {"mu_gas", &MaterialSet::mu_gas},
      {"mu_liquid", &MaterialSet::mu_liquid},
      {"surface_tension", &MaterialSet::surface_tension},
      {"absorptivity", &MaterialSet::absorptivity},
      {"boiling_temperature", &MaterialSet::boiling_temperature},
      {"latent_heat", &MaterialSet::latent_heat},
      {"enthalpy_reference_temperature", &MaterialSet::enthalpy_reference_temperature},
      {"molar_mass", &MaterialSet::molar_mass},
      {"sticking_constant", &MaterialSet::sticking_constant},
      {"liquidus_temperature", &MaterialSet::liquidus_temperature},
      {"solidus_temperature", &MaterialSet::solidus_temperature},
      {"darcy_morphology", &MaterialSet::darcy_morphology},
      {"darcy_division_guard", &MaterialSet::darcy_division_guard},
      {"ambient_pressure", &MaterialSet::ambient_pressure},
      {"laser_power", &MaterialSet::laser_power},
      {"laser_radius", &MaterialSet::laser_radius},
  };
  return f;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw InvalidInput("config key '" + key + "': " + what);
}

double get_number(const Json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(key, "must be finite");
  return v;
}

double get_positive(const Json& j, const std::string& key) {
  const double v = get_number(j, key);
  if (!(v > 0.0)) fail(key, "must be positive");
  return v;
}

int get_positive_int(const Json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(key, "expected an integer");
  const long long v = j.get<long long>();
  if (v <= 0 || v > 1'000'000'000) fail(key, "must be a positive integer");
  return static_cast<int>(v);
}

std::string get_string(const Json& j, const std::string& key) {
  if (!j.is_string()) fail(key, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const Json& j, const std::string& key) {
  if (!j.is_boolean()) fail(key, "expected true or false");
  return j.get<bool>();
}

template <class F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    if (msg.rfind("config key", 0) == 0) throw;
    fail(key, msg);
  }
}

LinearSolverKind parse_solver(const std::string& s, const std::string& key) {
  if (s == "direct") return LinearSolverKind::Direct;
  if (s == "cg") return LinearSolverKind::ConjugateGradient;
  fail(key, "expected one of {direct, cg}");
}

const char* solver_name(LinearSolverKind k) {
  return k == LinearSolverKind::Direct ? "direct" : "cg";
}

template <class T, class F>
std::vector<T> get_array(const Json& j, const std::string& key, F&& each) {
  if (!j.is_array()) fail(key, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(each(j[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

SweepBlock parse_sweep(const Json& j) {
  if (!j.is_object()) fail("sweep", "expected an object");
  static const std::set<std::string> allowed = {"cases", "methods", "eps", "n_i"};
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail("sweep." + k, "unknown key");
  }
  SweepBlock s;
  if (j.contains("cases")) {
    s.cases = get_array<DeltaCase>(j["cases"], "sweep.cases", [](const Json& v, const std::string& k) {
      return wrap(k, [&] { return parse_delta_case(get_string(v, k)); });
    });
  }
  if (j.contains("methods")) {
    s.methods = get_array<EvalMethod>(j["methods"], "sweep.methods", [](const Json& v, const std::string& k) {
      return wrap(k, [&] { return parse_eval_method(get_string(v, k)); });
    });
  }
  if (j.contains("eps")) {
    s.eps = get_array<double>(j["eps"], "sweep.eps",
                              [](const Json& v, const std::string& k) { return get_positive(v, k); });
  }
  if (j.contains("n_i")) {
    s.n_i = get_array<int>(j["n_i"], "sweep.n_i",
                           [](const Json& v, const std::string& k) { return get_positive_int(v, k); });
  }
  return s;
}

}  // namespace

bool operator==(const MaterialSet& a, const MaterialSet& b) {
  for (const auto& f : material_fields()) {
    if (a.*(f.member) != b.*(f.member)) return false;
  }
  return true;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.schema_version == b.schema_version && a.benchmark == b.benchmark &&
         a.delta_case == b.delta_case && a.method == b.method && a.eps == b.eps &&
         a.n_i == b.n_i && a.dt == b.dt && a.t_end == b.t_end && a.mode == b.mode &&
         a.materials == b.materials && a.output_dir == b.output_dir && a.workers == b.workers &&
         a.reference_policy == b.reference_policy && a.cache_dir == b.cache_dir &&
         a.far_field_h == b.far_field_h && a.dump_fields == b.dump_fields &&
         a.solver_2d == b.solver_2d && a.half_domain == b.half_domain && a.sweep == b.sweep;
}

RunSpec RunConfig::run_spec() const {
  RunSpec s;
  s.benchmark = benchmark;
  s.delta_case = delta_case;
  s.method = method;
  s.eps = eps;
  s.n_i = n_i;
  s.dt = dt;
  s.t_end = t_end;
  s.mode = mode;
  s.materials = materials;
  s.far_field_h = far_field_h;
  return s;
}

SweepGrid RunConfig::sweep_grid() const {
  SweepGrid g;
  g.base = run_spec();
  const SweepBlock block = sweep.value_or(SweepBlock{});
  g.cases = block.cases.empty() ? std::vector<DeltaCase>{delta_case} : block.cases;
  g.methods = block.methods.empty() ? std::vector<EvalMethod>{method} : block.methods;
  if (sweep && !block.eps.empty()) {
    g.eps = block.eps;
  } else if (eps > 0.0) {
    g.eps = {eps};
  }
  if (sweep && !block.n_i.empty()) {
    g.n_i = block.n_i;
  } else if (n_i > 0) {
    g.n_i = {n_i};
  }
  return g;
}

BenchmarkOptions RunConfig::options() const {
  BenchmarkOptions o;
  o.policy = reference_policy;
  o.half_domain = half_domain;
  o.solver_2d = solver_2d;
  o.keep_field = dump_fields;
  return o;
}

RunConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("config must be a JSON object");
  static const std::set<std::string> allowed = {
      "schema_version", "benchmark", "case", "method", "eps", "n_i", "dt", "t_end", "mode",
      "materials", "output_dir", "workers", "reference_policy", "cache_dir", "far_field_h",
      "dump_fields", "solver_2d", "half_domain", "sweep"};
  for (const auto& [k, v] : doc.items()) {
    if (!allowed.count(k)) fail(k, "unknown key");
  }
  RunConfig c;
  if (doc.contains("schema_version")) {
    c.schema_version = get_positive_int(doc["schema_version"], "schema_version");
    if (c.schema_version != kConfigSchemaVersion) {
      fail("schema_version", "unsupported version " + std::to_string(c.schema_version) +
                                 " (expected " + std::to_string(kConfigSchemaVersion) + ")");
    }
  }
  if (!doc.contains("benchmark")) fail("benchmark", "required");
  c.benchmark = wrap("benchmark", [&] { return parse_benchmark(get_string(doc["benchmark"], "benchmark")); });
  if (c.benchmark == BenchmarkId::B4) c.delta_case = DeltaCase::V1;
  if (doc.contains("case")) {
    c.delta_case = wrap("case", [&] { return parse_delta_case(get_string(doc["case"], "case")); });
  }
  if (doc.contains("method")) {
    c.method = wrap("method", [&] { return parse_eval_method(get_string(doc["method"], "method")); });
  }
  if (doc.contains("sweep")) c.sweep = parse_sweep(doc["sweep"]);
  if (doc.contains("eps")) c.eps = get_positive(doc["eps"], "eps");
  if (doc.contains("n_i")) c.n_i = get_positive_int(doc["n_i"], "n_i");
  if (doc.contains("dt")) c.dt = get_positive(doc["dt"], "dt");
  if (doc.contains("t_end")) c.t_end = get_positive(doc["t_end"], "t_end");
  if (doc.contains("mode")) {
    c.mode = wrap("mode", [&] { return parse_run_mode(get_string(doc["mode"], "mode")); });
  }
  if (doc.contains("materials")) {
    const Json& m = doc["materials"];
    if (!m.is_object()) fail("materials", "expected an object");
    for (const auto& [k, v] : m.items()) {
      const std::string key = "materials." + k;
      bool found = false;
      for (const auto& f : material_fields()) {
        if (k == f.name) {
          c.materials.*(f.member) = get_number(v, key);
          found = true;
          break;
        }
      }
      if (!found) fail(key, "unknown material property");
    }
    wrap("materials", [&] {
      c.materials.validate();
      return 0;
    });
  }
  if (doc.contains("output_dir")) {
    c.output_dir = get_string(doc["output_dir"], "output_dir");
    if (c.output_dir.empty()) fail("output_dir", "must not be empty");
  }
  if (doc.contains("workers")) c.workers = get_positive_int(doc["workers"], "workers");
  if (doc.contains("reference_policy")) {
    c.reference_policy = wrap("reference_policy", [&] {
      return parse_reference_policy(get_string(doc["reference_policy"], "reference_policy"));
    });
  }
  if (doc.contains("cache_dir")) c.cache_dir = get_string(doc["cache_dir"], "cache_dir");
  if (doc.contains("far_field_h")) c.far_field_h = get_positive(doc["far_field_h"], "far_field_h");
  if (doc.contains("dump_fields")) c.dump_fields = get_bool(doc["dump_fields"], "dump_fields");
  if (doc.contains("solver_2d")) {
    c.solver_2d = parse_solver(get_string(doc["solver_2d"], "solver_2d"), "solver_2d");
  }
  if (doc.contains("half_domain")) c.half_domain = get_bool(doc["half_domain"], "half_domain");

  const bool has_sweep_eps = c.sweep && !c.sweep->eps.empty();
  const bool has_sweep_ni = c.sweep && !c.sweep->n_i.empty();
  if (c.eps == 0.0 && !has_sweep_eps && !c.sweep) fail("eps", "required");
  if (c.n_i == 0 && !has_sweep_ni && !c.sweep) fail("n_i", "required");

  // Cross-field checks on every run the config describes.
  for (const RunSpec& s : expand(c.sweep_grid())) {
    wrap(c.sweep ? "sweep" : "eps", [&] {
      s.validate();
      return 0;
    });
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config_text(s.str());
}

Json to_json(const RunConfig& c) {
  Json j;
  j["schema_version"] = c.schema_version;
  j["benchmark"] = std::string(to_string(c.benchmark));
  j["case"] = std::string(to_string(c.delta_case));
  j["method"] = std::string(to_string(c.method));
  if (c.eps > 0.0) j["eps"] = c.eps;
  if (c.n_i > 0) j["n_i"] = c.n_i;
  j["dt"] = c.dt;
  j["t_end"] = c.t_end;
  j["mode"] = std::string(to_string(c.mode));
  Json m = Json::object();
  for (const auto& f : material_fields()) m[f.name] = c.materials.*(f.member);
  j["materials"] = m;
  j["output_dir"] = c.output_dir;
  j["workers"] = c.workers;
  j["reference_policy"] = std::string(to_string(c.reference_policy));
  j["cache_dir"] = c.cache_dir;
  j["far_field_h"] = c.far_field_h;
  j["dump_fields"] = c.dump_fields;
  j["solver_2d"] = solver_name(c.solver_2d);
  j["half_domain"] = c.half_domain;
  if (c.sweep) {
    Json s;
    s["cases"] = Json::array();
    for (DeltaCase d : c.sweep->cases) s["cases"].push_back(std::string(to_string(d)));
    s["methods"] = Json::array();
    for (EvalMethod e : c.sweep->methods) s["methods"].push_back(std::string(to_string(e)));
    s["eps"] = c.sweep->eps;
    s["n_i"] = c.sweep->n_i;
    j["sweep"] = s;
  }
  return j;
}

}  // namespace csf
