#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace pcmod::cli {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One protocol entry. Exactly one of duration / omega_t_over_pi is given.
struct SegmentEntry {
  double phase = 0.0;
  std::optional<double> duration;
  std::optional<double> omega_t_over_pi;
};

struct RunConfig {
  double delta = 0.5;
  double kappa = 1.0;
  std::optional<double> phi;
  int grid = 64;
  std::filesystem::path out = "out";
  std::uint64_t seed = 0x5eed5eedULL;
  double threshold = 0.99;
  int samples = 401;

  std::vector<SegmentEntry> protocol;
  std::string plan_file;
  /// "", "pushpull" or "two_step".
  std::string solver;

  std::optional<double> theta1;
  std::optional<double> theta2;
  std::optional<double> offset;
  /// "", "forward" or "backward": derive phases that pass this direction.
  std::string pass;
  bool sweep = false;
  bool svg = true;

  int max_segments = 0;
  int restarts = 8;

  /// "" or "delta_sign" (verify only).
  std::string inject_fault;
  /// RK4 step in units of 1/Omega for verify; 0 keeps the default.
  double oracle_step = 0.0;
};

/// Keys accepted in a config document.
const std::vector<std::string>& known_keys();

/// Builds a validated RunConfig from a merged JSON document. Unknown keys, wrong
/// types and out-of-range values throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads a JSON object from `path`; throws ConfigError on I/O or parse failure.
nlohmann::json load_config_file(const std::filesystem::path& path);

}  // namespace pcmod::cli
