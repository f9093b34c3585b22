#include "levsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "levsim/errors.hpp"

namespace levsim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& expectation) {
  throw ConfigError(key + ": " + expectation);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string list;
      for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      fail(path.empty() ? key : path + "." + key, "unknown key (allowed: " + list + ")");
    }
  }
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(key, "expected a finite number");
  return d;
}

bool read(const json& obj, const std::string& path, const char* key, double& out) {
  if (!obj.contains(key)) return false;
  out = number(obj.at(key), join(path, key));
  return true;
}

bool read(const json& obj, const std::string& path, const char* key, bool& out) {
  if (!obj.contains(key)) return false;
  if (!obj.at(key).is_boolean()) fail(join(path, key), "expected true or false");
  out = obj.at(key).get<bool>();
  return true;
}

template <class Int>
bool read_count(const json& obj, const std::string& path, const char* key, Int& out, Int min_value) {
  if (!obj.contains(key)) return false;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    fail(join(path, key), "expected a non-negative integer");
  }
  const auto u = v.get<std::uint64_t>();
  if (u < static_cast<std::uint64_t>(min_value)) {
    fail(join(path, key), "expected an integer >= " + std::to_string(static_cast<std::uint64_t>(min_value)));
  }
  out = static_cast<Int>(u);
  return true;
}

std::optional<double> optional_number(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number(obj.at(key), join(path, key));
}

template <std::size_t N>
std::array<double, N> number_array(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != N) fail(key, "expected an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = number(v[i], key + "[" + std::to_string(i) + "]");
  return out;
}

std::string_view model_name(Model m) { return m == Model::slow_flow ? "slow_flow" : "full_oscillation"; }

std::string_view stepper_name(Stepper s) {
  switch (s) {
    case Stepper::automatic: return "auto";
    case Stepper::euler_maruyama: return "euler_maruyama";
    case Stepper::heun: return "heun";
  }
  return "auto";
}

std::string_view kind_name(InitialDistribution::Kind k) {
  switch (k) {
    case InitialDistribution::Kind::point: return "point";
    case InitialDistribution::Kind::gaussian: return "gaussian";
    case InitialDistribution::Kind::thermal: return "thermal";
  }
  return "thermal";
}

// --- section parsers --------------------------------------------------------

OpticalSetup parse_optical(const json& o, const std::string& path) {
  reject_unknown(o, path, {"polarizability", "wave_vector", "rayleigh_range", "power_1", "power_2", "beam_waist",
                           "distance", "phase_1", "phase_2", "speed_of_light", "vacuum_permittivity"});
  OpticalSetup s;
  read(o, path, "polarizability", s.polarizability);
  read(o, path, "wave_vector", s.wave_vector);
  read(o, path, "rayleigh_range", s.rayleigh_range);
  read(o, path, "power_1", s.power_1);
  read(o, path, "power_2", s.power_2);
  read(o, path, "beam_waist", s.beam_waist);
  read(o, path, "distance", s.distance);
  read(o, path, "phase_1", s.phase_1);
  read(o, path, "phase_2", s.phase_2);
  read(o, path, "speed_of_light", s.speed_of_light);
  read(o, path, "vacuum_permittivity", s.vacuum_permittivity);
  try {
    s.validate();
  } catch (const InvalidParameter& e) {
    fail(path, e.what());
  }
  return s;
}

void parse_physics(const json& p, RunConfig& cfg) {
  const std::string path = "physics";
  reject_unknown(p, path, {"omega0", "omega0_is_angular", "gamma_g1", "gamma_g2", "recoil_rate", "gas_diffusion",
                           "gamma_a", "gamma_f", "parametric_f", "squeeze_r", "coupling_s", "thermal",
                           "thermal_in_slow_flow", "coupling"});
  ScenarioParams& sp = cfg.physics;

  bool angular = false;
  read(p, path, "omega0_is_angular", angular);
  double omega = 0.0;
  if (read(p, path, "omega0", omega)) {
    sp.omega0 = angular ? omega : 2.0 * std::numbers::pi * omega;
  }
  read(p, path, "gamma_g1", sp.gamma_g1);
  read(p, path, "gamma_g2", sp.gamma_g2);
  read(p, path, "recoil_rate", sp.recoil_rate);
  read(p, path, "gas_diffusion", sp.gas_diffusion);
  read(p, path, "gamma_a", sp.gamma_a);
  read(p, path, "gamma_f", sp.gamma_f);
  read(p, path, "coupling_s", sp.coupling_s);
  read(p, path, "thermal_in_slow_flow", sp.thermal_in_slow_flow);

  // r is the primary drive parameter; f follows from r = f omega0 / gamma_g2
  // unless only f is given.
  double f = 0.0;
  double r = 0.0;
  const bool has_f = read(p, path, "parametric_f", f);
  const bool has_r = read(p, path, "squeeze_r", r);
  if (has_f && has_r) {
    sp.parametric_f = f;
    sp.squeeze_r = r;
    if (!drive_consistent(sp)) {
      std::ostringstream os;
      os << "inconsistent with squeeze_r: r = f*omega0/gamma_g2 requires f = "
         << parametric_f_from_r(r, sp.omega0, sp.gamma_g2) << " for r = " << r << " (got f = " << f << ")";
      fail("physics.parametric_f", os.str());
    }
  } else if (has_f) {
    sp.parametric_f = f;
    sp.squeeze_r = squeeze_r_from_f(f, sp.omega0, sp.gamma_g2);
  } else {
    if (has_r) sp.squeeze_r = r;
    sp.parametric_f = parametric_f_from_r(sp.squeeze_r, sp.omega0, sp.gamma_g2);
  }

  if (p.contains("thermal")) {
    const json& t = p.at("thermal");
    if (t.is_null()) {
      sp.thermal.reset();
    } else {
      reject_unknown(t, "physics.thermal", {"temperature", "gas_damping"});
      ThermalBlock tb;
      if (!read(t, "physics.thermal", "temperature", tb.temperature)) fail("physics.thermal.temperature", "required");
      tb.gas_damping = optional_number(t, "physics.thermal", "gas_damping");
      sp.thermal = tb;
    }
  }

  if (p.contains("coupling")) {
    const json& c = p.at("coupling");
    const std::string cp = "physics.coupling";
    reject_unknown(c, cp, {"kd0", "dphi", "g", "optical"});
    read(c, cp, "kd0", cfg.coupling.kd0);
    read(c, cp, "dphi", cfg.coupling.dphi);
    if (c.contains("g")) cfg.coupling.g = optional_number(c, cp, "g");
    if (c.contains("optical")) {
      if (c.at("optical").is_null()) {
        cfg.coupling.optical.reset();
      } else {
        cfg.coupling.optical = parse_optical(c.at("optical"), cp + ".optical");
      }
    }
  }

  try {
    sp.validate();
  } catch (const InvalidParameter& e) {
    fail(path, e.what());
  }
}

InitialDistribution parse_initial(const json& o, const std::string& path) {
  reject_unknown(o, path, {"kind", "mean", "covariance", "variance"});
  InitialDistribution init;
  if (o.contains("kind")) {
    const json& k = o.at("kind");
    const std::string name = k.is_string() ? k.get<std::string>() : "";
    if (name == "point") {
      init.kind = InitialDistribution::Kind::point;
    } else if (name == "gaussian") {
      init.kind = InitialDistribution::Kind::gaussian;
    } else if (name == "thermal") {
      init.kind = InitialDistribution::Kind::thermal;
    } else {
      fail(path + ".kind", "expected \"point\", \"gaussian\" or \"thermal\"");
    }
  }
  if (o.contains("mean")) init.mean = QuadratureState::from_array(number_array<4>(o.at("mean"), path + ".mean"));
  if (o.contains("covariance")) init.covariance = number_array<16>(o.at("covariance"), path + ".covariance");
  init.variance = optional_number(o, path, "variance");
  if (init.variance && *init.variance < 0.0) fail(path + ".variance", "expected a value >= 0");
  return init;
}

void parse_simulation(const json& s, RunConfig& cfg, bool& burn_in_given) {
  const std::string path = "simulation";
  reject_unknown(s, path, {"dt", "t_end", "burn_in", "n_trajectories", "seed", "record_stride", "model", "stepper",
                           "initial", "threads"});
  SimConfig& sim = cfg.simulation;
  read(s, path, "dt", sim.dt);
  read(s, path, "t_end", sim.t_end);
  burn_in_given = read(s, path, "burn_in", sim.burn_in);
  read_count<std::size_t>(s, path, "n_trajectories", sim.n_trajectories, 1);
  read_count<std::uint64_t>(s, path, "seed", sim.master_seed, 0);
  read_count<std::size_t>(s, path, "record_stride", sim.record_stride, 1);
  read_count<unsigned>(s, path, "threads", sim.threads, 0);
  if (s.contains("model")) {
    const json& m = s.at("model");
    const std::string name = m.is_string() ? m.get<std::string>() : "";
    if (name == "slow_flow") {
      sim.model = Model::slow_flow;
    } else if (name == "full_oscillation") {
      sim.model = Model::full_oscillation;
    } else {
      fail("simulation.model", "expected \"slow_flow\" or \"full_oscillation\"");
    }
  }
  if (s.contains("stepper")) {
    const json& m = s.at("stepper");
    const std::string name = m.is_string() ? m.get<std::string>() : "";
    if (name == "auto") {
      sim.stepper = Stepper::automatic;
    } else if (name == "euler_maruyama") {
      sim.stepper = Stepper::euler_maruyama;
    } else if (name == "heun") {
      sim.stepper = Stepper::heun;
    } else {
      fail("simulation.stepper", "expected \"auto\", \"euler_maruyama\" or \"heun\"");
    }
  }
  if (s.contains("initial")) sim.initial = parse_initial(s.at("initial"), "simulation.initial");
}

void parse_analysis(const json& a, RunConfig& cfg) {
  const std::string path = "analysis";
  reject_unknown(a, path, {"bins", "bounds", "lags", "window", "mode_smoothing", "witness_delta_q1",
                           "witness_trajectories", "g2_reference", "g2_intermediate_time"});
  AnalysisOptions& o = cfg.analysis;
  read_count<int>(a, path, "bins", o.bins, 2);
  if (a.contains("bounds")) {
    const json& b = a.at("bounds");
    if (b.is_null()) {
      o.bounds.reset();
    } else {
      reject_unknown(b, "analysis.bounds", {"q_min", "q_max", "p_min", "p_max"});
      Bounds bounds;
      for (const char* k : {"q_min", "q_max", "p_min", "p_max"}) {
        if (!b.contains(k)) fail(std::string("analysis.bounds.") + k, "required");
      }
      read(b, "analysis.bounds", "q_min", bounds.q_min);
      read(b, "analysis.bounds", "q_max", bounds.q_max);
      read(b, "analysis.bounds", "p_min", bounds.p_min);
      read(b, "analysis.bounds", "p_max", bounds.p_max);
      if (!(bounds.q_max > bounds.q_min && bounds.p_max > bounds.p_min)) {
        fail("analysis.bounds", "expected q_max > q_min and p_max > p_min");
      }
      o.bounds = bounds;
    }
  }
  if (a.contains("lags")) {
    const json& l = a.at("lags");
    if (!l.is_array()) fail("analysis.lags", "expected an array of numbers");
    o.lags.clear();
    for (std::size_t i = 0; i < l.size(); ++i) {
      const double v = number(l[i], "analysis.lags[" + std::to_string(i) + "]");
      if (v < 0.0) fail("analysis.lags[" + std::to_string(i) + "]", "expected a value >= 0");
      o.lags.push_back(v);
    }
  }
  if (a.contains("window")) {
    const json& w = a.at("window");
    if (w.is_null()) {
      o.window.reset();
    } else {
      const auto v = number_array<2>(w, "analysis.window");
      if (!(v[1] >= v[0])) fail("analysis.window", "expected [begin, end] with end >= begin");
      o.window = TimeWindow{v[0], v[1]};
    }
  }
  read(a, path, "mode_smoothing", o.mode_smoothing);
  if (!(o.mode_smoothing >= 1.0)) fail("analysis.mode_smoothing", "expected a value >= 1 (bins)");
  read(a, path, "witness_delta_q1", o.witness_delta_q1);
  read_count<std::size_t>(a, path, "witness_trajectories", o.witness_trajectories, 0);
  read(a, path, "g2_reference", o.g2_reference);
  if (a.contains("g2_intermediate_time")) o.g2_intermediate_time = optional_number(a, path, "g2_intermediate_time");
}

void parse_output(const json& o, RunConfig& cfg) {
  reject_unknown(o, "output", {"dir", "emit"});
  if (o.contains("dir")) {
    if (!o.at("dir").is_string() || o.at("dir").get<std::string>().empty()) {
      fail("output.dir", "expected a non-empty string");
    }
    cfg.output_dir = o.at("dir").get<std::string>();
  }
  if (o.contains("emit")) {
    const json& e = o.at("emit");
    if (e.is_string()) {
      cfg.emit = parse_emit_list(e.get<std::string>());
    } else if (e.is_array()) {
      std::string list;
      for (const auto& item : e) {
        if (!item.is_string()) fail("output.emit", "expected strings");
        list += (list.empty() ? "" : ",") + item.get<std::string>();
      }
      cfg.emit = parse_emit_list(list);
    } else {
      fail("output.emit", "expected a list such as [\"csv\", \"histograms\", \"report\"]");
    }
  }
}

json optical_json(const OpticalSetup& s) {
  return json{{"polarizability", s.polarizability}, {"wave_vector", s.wave_vector},
              {"rayleigh_range", s.rayleigh_range}, {"power_1", s.power_1},
              {"power_2", s.power_2},               {"beam_waist", s.beam_waist},
              {"distance", s.distance},             {"phase_1", s.phase_1},
              {"phase_2", s.phase_2},               {"speed_of_light", s.speed_of_light},
              {"vacuum_permittivity", s.vacuum_permittivity}};
}

}  // namespace

CouplingCoefficients CouplingConfig::coefficients(const ScenarioParams& sp) const {
  if (optical) {
    return coupling_coefficients(modulating_constant(*optical), optical->kd0(), optical->phase_difference());
  }
  if (g) return coupling_coefficients(*g, kd0, dphi);
  const double quarter = 0.25 * std::numbers::pi;
  // At the ideal point use exact zeros rather than cos(pi/2) ~ 6e-17.
  if (kd0 == quarter && dphi == quarter) return unidirectional_coefficients(sp.coupling_s);
  return coupling_coefficients(modulating_constant_for_rate(sp.coupling_s, kd0, dphi), kd0, dphi);
}

EmitFlags parse_emit_list(std::string_view list) {
  EmitFlags e{false, false, false, false};
  std::size_t pos = 0;
  bool any = false;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "csv") {
      e.csv = true;
    } else if (item == "histograms") {
      e.histograms = true;
    } else if (item == "svg") {
      e.svg = true;
    } else if (item == "report") {
      e.report = true;
    } else if (item == "all") {
      e = {true, true, true, true};
    } else if (!item.empty()) {
      throw ConfigError("output.emit: unknown item \"" + std::string(item) +
                        "\" (expected csv, histograms, svg, report or all)");
    }
    any = any || !item.empty();
    pos = comma + 1;
  }
  if (!any) throw ConfigError("output.emit: empty list");
  return e;
}

std::string to_string(const EmitFlags& e) {
  std::string out;
  auto add = [&out](bool on, const char* name) {
    if (on) out += (out.empty() ? "" : ",") + std::string(name);
  };
  add(e.csv, "csv");
  add(e.histograms, "histograms");
  add(e.svg, "svg");
  add(e.report, "report");
  return out;
}

RunConfig default_run_config(Scenario s) {
  RunConfig cfg;
  cfg.physics = ScenarioParams::preset(s);
  SimConfig& sim = cfg.simulation;
  sim.dt = 1e-4;
  sim.burn_in = default_burn_in(cfg.physics);
  switch (s) {
    case Scenario::squeeze:
      sim.t_end = 100.0;
      sim.n_trajectories = 2000;
      sim.record_stride = 1000;
      break;
    case Scenario::coherent:
      sim.t_end = sim.burn_in + 10.0;
      sim.n_trajectories = 4000;
      sim.record_stride = 100;
      cfg.analysis.g2_reference = true;
      break;
    case Scenario::bistable:
      sim.t_end = 30.0;
      sim.n_trajectories = 1000;
      sim.record_stride = 500;
      break;
    case Scenario::custom:
      sim.t_end = 30.0;
      sim.n_trajectories = 500;
      sim.record_stride = 100;
      break;
  }
  cfg.output_dir = "out";
  return cfg;
}

RunConfig parse_config_text(std::string_view json_text, const Overrides& overrides) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("<root>", "expected a JSON object");

  // Overrides are written into the document so they obey the same checks.
  auto section = [&root](const char* name) -> json& {
    if (!root.contains(name) || root[name].is_null()) root[name] = json::object();
    return root[name];
  };
  if (overrides.scenario) root["scenario"] = *overrides.scenario;
  if (overrides.seed) section("simulation")["seed"] = *overrides.seed;
  if (overrides.trajectories) section("simulation")["n_trajectories"] = *overrides.trajectories;
  if (overrides.dt) section("simulation")["dt"] = *overrides.dt;
  if (overrides.t_end) section("simulation")["t_end"] = *overrides.t_end;
  if (overrides.out) section("output")["dir"] = *overrides.out;
  if (overrides.emit) section("output")["emit"] = *overrides.emit;

  reject_unknown(root, "", {"scenario", "physics", "simulation", "analysis", "output"});
  Scenario scenario = Scenario::custom;
  if (root.contains("scenario")) {
    const json& s = root.at("scenario");
    const auto parsed = s.is_string() ? scenario_from_string(s.get<std::string>()) : std::nullopt;
    if (!parsed) fail("scenario", "expected \"squeeze\", \"coherent\", \"bistable\" or \"custom\"");
    scenario = *parsed;
  }
  RunConfig cfg = default_run_config(scenario);
  const double default_t_end = cfg.simulation.t_end;
  const double default_burn = cfg.simulation.burn_in;

  if (root.contains("physics")) parse_physics(root.at("physics"), cfg);
  bool burn_in_given = false;
  if (root.contains("simulation")) parse_simulation(root.at("simulation"), cfg, burn_in_given);
  if (root.contains("analysis")) parse_analysis(root.at("analysis"), cfg);
  if (root.contains("output")) parse_output(root.at("output"), cfg);

  SimConfig& sim = cfg.simulation;
  if (!burn_in_given) {
    sim.burn_in = default_burn_in(cfg.physics);
    // Keep the default record length when only the physics changed.
    if (sim.t_end == default_t_end && sim.burn_in != default_burn && scenario == Scenario::coherent) {
      sim.t_end = sim.burn_in + 10.0;
    }
  }
  if (!(sim.dt > 0.0)) fail("simulation.dt", "expected a value > 0");
  if (!(sim.t_end > sim.burn_in)) {
    std::ostringstream os;
    os << "expected t_end > burn_in (t_end = " << sim.t_end << ", burn_in = " << sim.burn_in << ")";
    fail("simulation.t_end", os.str());
  }
  try {
    sim.validate();
  } catch (const InvalidParameter& e) {
    fail("simulation", e.what());
  }
  if (sim.record_steps().empty()) fail("simulation.record_stride", "no sample would be recorded after burn_in");
  return cfg;
}

RunConfig parse_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file " + path);
  return parse_config_text(ss.str(), overrides);
}

std::string to_json_text(const RunConfig& cfg) {
  const ScenarioParams& sp = cfg.physics;
  json physics{{"omega0", sp.omega0},
               {"omega0_is_angular", true},
               {"gamma_g1", sp.gamma_g1},
               {"gamma_g2", sp.gamma_g2},
               {"recoil_rate", sp.recoil_rate},
               {"gas_diffusion", sp.gas_diffusion},
               {"gamma_a", sp.gamma_a},
               {"gamma_f", sp.gamma_f},
               {"parametric_f", sp.parametric_f},
               {"squeeze_r", sp.squeeze_r},
               {"coupling_s", sp.coupling_s},
               {"thermal_in_slow_flow", sp.thermal_in_slow_flow}};
  if (sp.thermal) {
    physics["thermal"] = json{{"temperature", sp.thermal->temperature},
                              {"gas_damping", sp.thermal->gas_damping ? json(*sp.thermal->gas_damping) : json()}};
  } else {
    physics["thermal"] = nullptr;
  }
  physics["coupling"] = json{{"kd0", cfg.coupling.kd0},
                             {"dphi", cfg.coupling.dphi},
                             {"g", cfg.coupling.g ? json(*cfg.coupling.g) : json()},
                             {"optical", cfg.coupling.optical ? optical_json(*cfg.coupling.optical) : json()}};

  const SimConfig& sim = cfg.simulation;
  const auto& init = sim.initial;
  json simulation{{"dt", sim.dt},
                  {"t_end", sim.t_end},
                  {"burn_in", sim.burn_in},
                  {"n_trajectories", sim.n_trajectories},
                  {"seed", sim.master_seed},
                  {"record_stride", sim.record_stride},
                  {"model", model_name(sim.model)},
                  {"stepper", stepper_name(sim.stepper)},
                  {"threads", sim.threads},
                  {"initial",
                   {{"kind", kind_name(init.kind)},
                    {"mean", init.mean.as_array()},
                    {"covariance", init.covariance},
                    {"variance", init.variance ? json(*init.variance) : json()}}}};

  const AnalysisOptions& a = cfg.analysis;
  json analysis{{"bins", a.bins},
                {"lags", a.lags},
                {"mode_smoothing", a.mode_smoothing},
                {"witness_delta_q1", a.witness_delta_q1},
                {"witness_trajectories", a.witness_trajectories},
                {"g2_reference", a.g2_reference},
                {"g2_intermediate_time", a.g2_intermediate_time ? json(*a.g2_intermediate_time) : json()}};
  analysis["bounds"] = a.bounds ? json{{"q_min", a.bounds->q_min},
                                       {"q_max", a.bounds->q_max},
                                       {"p_min", a.bounds->p_min},
                                       {"p_max", a.bounds->p_max}}
                                : json();
  analysis["window"] = a.window ? json::array({a.window->begin, a.window->end}) : json();

  std::vector<std::string> emit;
  if (cfg.emit.csv) emit.push_back("csv");
  if (cfg.emit.histograms) emit.push_back("histograms");
  if (cfg.emit.svg) emit.push_back("svg");
  if (cfg.emit.report) emit.push_back("report");

  json root{{"scenario", std::string(to_string(sp.scenario))},
            {"physics", physics},
            {"simulation", simulation},
            {"analysis", analysis},
            {"output", {{"dir", cfg.output_dir}, {"emit", emit}}}};
  return root.dump(2) + "\n";
}

bool operator==(const RunConfig& a, const RunConfig& b) { return to_json_text(a) == to_json_text(b); }

}  // namespace levsim
