#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcmod/cli/config.hpp"

namespace pcmod::cli {

struct Artifact {
  std::filesystem::path name;  ///< relative to RunConfig::out
  std::string content;
};

/// Everything a command produces. Nothing touches the filesystem until
/// write_outputs, so a failing command never leaves partial results.
struct CommandOutput {
  std::vector<Artifact> files;
  int exit_code = 0;
  std::string message;

  const Artifact* find(const std::filesystem::path& name) const;
};

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< verify found a failing invariant
inline constexpr int kExitUsage = 2;    ///< invalid configuration or infeasible request
inline constexpr int kExitSearchCap = 3;
inline constexpr int kExitIo = 4;

CommandOutput run_simulate(const RunConfig& config);
CommandOutput run_feasibility(const RunConfig& config);
CommandOutput run_transfer_map(const RunConfig& config);
CommandOutput run_plan(const RunConfig& config);
CommandOutput run_isolator(const RunConfig& config);
CommandOutput run_verify(const RunConfig& config);

/// The invariant battery behind run_verify. Each entry of "checks" carries
/// name, passed, max_residual, tolerance and detail; "passed" is the conjunction.
nlohmann::json verify_report(const RunConfig& config);

void write_outputs(const RunConfig& config, const CommandOutput& output);

}  // namespace pcmod::cli
