#include "pcmod/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "pcmod/types.hpp"

namespace pcmod::cli {

using nlohmann::json;

namespace {

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("'" + key + "' must be finite");
  return x;
}

int integer(const json& v, const std::string& key, int lo, int hi) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi)
    throw ConfigError("'" + key + "' must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

bool boolean(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("'" + key + "' must be true or false");
  return v.get<bool>();
}

std::string one_of(const json& v, const std::string& key, std::initializer_list<const char*> allowed) {
  const auto s = text(v, key);
  for (const char* a : allowed)
    if (s == a) return s;
  std::string msg = "'" + key + "' must be one of:";
  for (const char* a : allowed) msg += std::string(" \"") + a + "\"";
  throw ConfigError(msg);
}

SegmentEntry parse_segment(const json& v, std::size_t index) {
  const std::string where = "protocol[" + std::to_string(index) + "]";
  if (!v.is_object()) throw ConfigError(where + " must be an object");
  SegmentEntry seg;
  bool has_phase = false;
  for (const auto& [key, value] : v.items()) {
    if (key == "phase") {
      seg.phase = number(value, where + ".phase");
      has_phase = true;
    } else if (key == "duration") {
      seg.duration = number(value, where + ".duration");
      if (*seg.duration < 0.0) throw ConfigError(where + ".duration must be >= 0");
    } else if (key == "omega_t_over_pi") {
      seg.omega_t_over_pi = number(value, where + ".omega_t_over_pi");
      if (*seg.omega_t_over_pi < 0.0) throw ConfigError(where + ".omega_t_over_pi must be >= 0");
    } else {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
  if (!has_phase) throw ConfigError(where + " needs 'phase'");
  if (seg.duration.has_value() == seg.omega_t_over_pi.has_value())
    throw ConfigError(where + " needs exactly one of 'duration' or 'omega_t_over_pi'");
  return seg;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "delta",  "kappa", "phi",   "grid",         "out",      "seed",        "threshold",
      "samples", "protocol", "plan_file", "solver", "theta1", "theta2", "offset",
      "pass",   "sweep", "svg",   "max_segments", "restarts", "inject_fault", "tolerances"};
  return keys;
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const auto& keys = known_keys();
  for (const auto& [key, value] : doc.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError("unknown config key '" + key + "'");

  RunConfig c;
  auto has = [&](const char* key) { return doc.contains(key) && !doc.at(key).is_null(); };

  if (has("delta")) c.delta = number(doc["delta"], "delta");
  if (has("kappa")) c.kappa = number(doc["kappa"], "kappa");
  try {
    CouplerParams check(c.delta, c.kappa);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (has("phi")) c.phi = number(doc["phi"], "phi");
  if (has("grid")) c.grid = integer(doc["grid"], "grid", 16, 4096);
  if (has("out")) {
    c.out = text(doc["out"], "out");
    if (c.out.empty()) throw ConfigError("'out' must not be empty");
  }
  if (has("seed")) {
    const auto& seed = doc["seed"];
    const bool ok = seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0);
    if (!ok) throw ConfigError("'seed' must be a non-negative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (has("threshold")) {
    c.threshold = number(doc["threshold"], "threshold");
    if (c.threshold <= 0.0 || c.threshold > 1.0) throw ConfigError("'threshold' must be in (0, 1]");
  }
  if (has("samples")) c.samples = integer(doc["samples"], "samples", 2, 1000000);
  if (has("protocol")) {
    const auto& p = doc["protocol"];
    if (!p.is_array() || p.empty()) throw ConfigError("'protocol' must be a non-empty array");
    for (std::size_t i = 0; i < p.size(); ++i) c.protocol.push_back(parse_segment(p[i], i));
  }
  if (has("plan_file")) c.plan_file = text(doc["plan_file"], "plan_file");
  if (has("solver")) c.solver = one_of(doc["solver"], "solver", {"pushpull", "two_step"});
  if (has("theta1")) c.theta1 = number(doc["theta1"], "theta1");
  if (has("theta2")) c.theta2 = number(doc["theta2"], "theta2");
  if (has("offset")) c.offset = number(doc["offset"], "offset");
  if (has("pass")) {
    c.pass = one_of(doc["pass"], "pass", {"forward", "backward"});
    if (c.theta1 || c.theta2 || c.offset)
      throw ConfigError("'pass' derives the phases; do not combine it with theta1/theta2/offset");
  }
  if (has("sweep")) c.sweep = boolean(doc["sweep"], "sweep");
  if (has("svg")) c.svg = boolean(doc["svg"], "svg");
  if (has("max_segments")) {
    c.max_segments = integer(doc["max_segments"], "max_segments", 0, 1000);
    if (c.max_segments == 1) throw ConfigError("'max_segments' must be 0 (automatic) or >= 2");
  }
  if (has("restarts")) c.restarts = integer(doc["restarts"], "restarts", 0, 1000);
  if (has("inject_fault")) c.inject_fault = one_of(doc["inject_fault"], "inject_fault", {"", "delta_sign"});
  if (has("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
    for (const auto& [key, value] : t.items()) {
      if (key != "oracle_step") throw ConfigError("unknown key '" + key + "' in tolerances");
      c.oracle_step = number(value, "tolerances.oracle_step");
      if (c.oracle_step <= 0.0 || c.oracle_step > 0.01)
        throw ConfigError("'tolerances.oracle_step' must be in (0, 0.01]");
    }
  }
  if (!c.protocol.empty() && !c.plan_file.empty())
    throw ConfigError("give either 'protocol' or 'plan_file', not both");
  return c;
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
}

}  // namespace pcmod::cli
