#include "relunet/experiment/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace relunet::experiment {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "command", "hidden", "alpha", "target", "phi0", "random_init", "gamma", "gate",
    "max_steps", "risk_tol", "T", "h", "method", "r_values", "quadrature", "output",
    "seed", "scale"};

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

double real_field(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

double positive_field(const json& j, const std::string& field) {
  const double x = real_field(j, field);
  if (!(x > 0.0)) fail(field, "must be positive");
  return x;
}

std::uint64_t uint_field(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    if (!j.is_number_unsigned()) fail(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<double> real_list(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(real_field(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

int int_field(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

Target parse_target(const json& j) {
  if (!j.is_object()) fail("target", "expected an object with breakpoints and coeffs");
  for (const auto& [key, _] : j.items()) {
    if (key != "breakpoints" && key != "coeffs") fail("target." + key, "unknown field");
  }
  if (!j.contains("breakpoints")) fail("target.breakpoints", "missing");
  if (!j.contains("coeffs")) fail("target.coeffs", "missing");
  std::vector<double> bps = real_list(j["breakpoints"], "target.breakpoints");
  const json& cj = j["coeffs"];
  if (!cj.is_array()) fail("target.coeffs", "expected an array of coefficient arrays");
  std::vector<std::vector<double>> coeffs;
  for (std::size_t i = 0; i < cj.size(); ++i) {
    coeffs.push_back(real_list(cj[i], "target.coeffs[" + std::to_string(i) + "]"));
  }
  try {
    return Target::piecewise(std::move(bps), std::move(coeffs));
  } catch (const std::exception& e) {
    fail("target", e.what());
  }
}

Gate parse_gate(const json& j) {
  if (!j.is_string()) fail("gate", "expected \"exact\", \"conservative\" or \"random\"");
  const std::string s = j.get<std::string>();
  if (s == "exact") return Gate::Exact;
  if (s == "conservative") return Gate::Conservative;
  if (s == "random") return Gate::Random;
  fail("gate", "unknown gate \"" + s + "\"");
}

}  // namespace

bool is_command(const std::string& name) {
  for (const char* c : kCommands) {
    if (name == c) return true;
  }
  return false;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKnownKeys.count(key)) fail(key, "unknown field");
  }

  ExperimentConfig cfg;
  if (j.contains("hidden")) {
    const std::uint64_t H = uint_field(j["hidden"], "hidden");
    if (H == 0) fail("hidden", "must be >= 1");
    cfg.hidden = H;
  }

  if (j.contains("alpha") && j.contains("target")) fail("target", "give either alpha or target");
  if (j.contains("alpha")) cfg.target = Target::constant(real_field(j["alpha"], "alpha"));
  if (j.contains("target")) cfg.target = parse_target(j["target"]);

  if (j.contains("phi0") && j.contains("random_init")) {
    fail("phi0", "give exactly one of phi0 and random_init");
  }
  if (j.contains("phi0")) {
    std::vector<double> phi = real_list(j["phi0"], "phi0");
    if (phi.size() < 4 || (phi.size() - 1) % 3 != 0) fail("phi0", "length must be 3H+1, H >= 1");
    const std::size_t H = (phi.size() - 1) / 3;
    if (cfg.hidden && *cfg.hidden != H) fail("phi0", "length does not match hidden");
    cfg.hidden = H;
    cfg.phi0 = std::move(phi);
  }
  if (j.contains("random_init")) {
    const json& r = j["random_init"];
    if (!r.is_object()) fail("random_init", "expected an object with c and seed");
    for (const auto& [key, _] : r.items()) {
      if (key != "c" && key != "seed") fail("random_init." + key, "unknown field");
    }
    if (!r.contains("c")) fail("random_init.c", "missing");
    RandomInit ri;
    ri.c = positive_field(r["c"], "random_init.c");
    if (r.contains("seed")) ri.seed = uint_field(r["seed"], "random_init.seed");
    if (!cfg.hidden) fail("hidden", "required with random_init");
    cfg.random_init = ri;
  }

  if (j.contains("gamma") && j.contains("gate")) fail("gamma", "give either gamma or gate");
  if (j.contains("gamma")) cfg.gamma = positive_field(j["gamma"], "gamma");
  if (j.contains("gate")) cfg.gate = parse_gate(j["gate"]);

  if (j.contains("max_steps")) cfg.max_steps = uint_field(j["max_steps"], "max_steps");
  if (j.contains("risk_tol")) {
    cfg.risk_tol = real_field(j["risk_tol"], "risk_tol");
    if (cfg.risk_tol < 0.0) fail("risk_tol", "must be >= 0");
  }
  if (j.contains("T")) cfg.T = positive_field(j["T"], "T");
  if (j.contains("h")) cfg.h = positive_field(j["h"], "h");
  if (cfg.h > cfg.T) fail("h", "must not exceed T");
  if (j.contains("method")) {
    if (!j["method"].is_string()) fail("method", "expected \"rk4\" or \"euler\"");
    const std::string m = j["method"].get<std::string>();
    if (m == "rk4") {
      cfg.method = FlowMethod::RK4;
    } else if (m == "euler") {
      cfg.method = FlowMethod::Euler;
    } else {
      fail("method", "unknown method \"" + m + "\"");
    }
  }
  if (j.contains("r_values")) {
    cfg.r_values = real_list(j["r_values"], "r_values");
    for (std::size_t i = 0; i < cfg.r_values.size(); ++i) {
      if (!(cfg.r_values[i] >= 1.0)) fail("r_values", "every r must be >= 1");
      if (i > 0 && !(cfg.r_values[i] > cfg.r_values[i - 1])) {
        fail("r_values", "must be strictly increasing");
      }
    }
  }
  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    if (!q.is_object()) fail("quadrature", "expected an object");
    for (const auto& [key, val] : q.items()) {
      const std::string f = "quadrature." + key;
      if (key == "nodes_per_panel") {
        cfg.quadrature.nodes_per_panel = int_field(val, f);
      } else if (key == "base_panels") {
        cfg.quadrature.base_panels = int_field(val, f);
      } else if (key == "kink_width_factor") {
        cfg.quadrature.kink_width_factor = real_field(val, f);
      } else if (key == "refinement_levels") {
        cfg.quadrature.refinement_levels = int_field(val, f);
      } else {
        fail(f, "unknown field");
      }
    }
    try {
      cfg.quadrature.validate();
    } catch (const std::exception& e) {
      fail("quadrature", e.what());
    }
  }
  if (j.contains("command")) {
    const std::string c = j["command"].is_string() ? j["command"].get<std::string>() : "";
    if (!is_command(c)) fail("command", "expected one of risk, grad, train, flow, sweep, verify");
    cfg.command = c;
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) fail("output", "expected a path string");
    cfg.output = j["output"].get<std::string>();
  }
  if (j.contains("seed")) cfg.seed = uint_field(j["seed"], "seed");
  if (j.contains("scale")) {
    const std::string s = j["scale"].is_string() ? j["scale"].get<std::string>() : "";
    if (s == "small") {
      cfg.scale = VerifyScale::Small;
    } else if (s == "full") {
      cfg.scale = VerifyScale::Full;
    } else {
      fail("scale", "expected \"small\" or \"full\"");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ParamVector ExperimentConfig::initial_point() const {
  if (phi0) return ParamVector(*hidden, *phi0);
  if (random_init) return random_start(random_init->c, *hidden, random_init->seed, 0);
  throw ConfigError("config field 'phi0': missing (give phi0 or random_init)");
}

LearningRate ExperimentConfig::learning_rate() const {
  if (gamma) return *gamma;
  if (gate) return *gate;
  throw ConfigError("config field 'gamma': missing (give gamma or gate)");
}

}  // namespace relunet::experiment
