#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pcmod/cli/commands.hpp"
#include "pcmod/cli/io.hpp"

using namespace pcmod::cli;

int main(int argc, char** argv) {
  CLI::App app{"Piecewise-phase coupled-mode transfer toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<double> delta, kappa, phi, threshold;
  std::optional<std::string> inject_fault;

  app.add_option("--config", config_path, "JSON config file (flags override its fields)");
  app.add_option("--out", out, "Output directory");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--grid", grid, "Grid size per axis");
  app.add_option("--delta", delta, "Detuning");
  app.add_option("--kappa", kappa, "Coupling magnitude");
  app.add_option("--phi", phi, "Relative coupling phase of the second segment");
  app.add_option("--threshold", threshold, "Transfer threshold for plan search");
  app.add_option("--inject-fault", inject_fault,
                 "verify self-test: 'delta_sign' flips the detuning sign on the analytic side");

  const std::map<std::string, std::function<CommandOutput(const RunConfig&)>> commands{
      {"simulate", run_simulate},   {"feasibility", run_feasibility}, {"transfer-map", run_transfer_map},
      {"plan", run_plan},           {"isolator", run_isolator},       {"verify", run_verify}};
  const std::map<std::string, std::string> help{
      {"simulate", "Trajectory of an explicit protocol, a saved plan, or a solver result"},
      {"feasibility", "Two-segment feasibility grid and boundary curve"},
      {"transfer-map", "|a2|^2 over the two segment durations"},
      {"plan", "Minimal multi-segment schedule for complete transfer"},
      {"isolator", "Forward/backward cross transmission of the two-stage cascade"},
      {"verify", "Run the invariant battery and write report.json"}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help.at(name))->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    nlohmann::json doc = config_path.empty() ? nlohmann::json::object() : load_config_file(config_path);
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    if (out) doc["out"] = *out;
    if (seed) doc["seed"] = *seed;
    if (grid) doc["grid"] = *grid;
    if (delta) doc["delta"] = *delta;
    if (kappa) doc["kappa"] = *kappa;
    if (phi) doc["phi"] = *phi;
    if (threshold) doc["threshold"] = *threshold;
    if (inject_fault) doc["inject_fault"] = *inject_fault;

    const RunConfig config = parse_config(doc);
    if (!config.inject_fault.empty() && command != "verify")
      throw ConfigError("--inject-fault only applies to verify");

    const CommandOutput result = commands.at(command)(config);
    write_outputs(config, result);
    std::puts(result.message.c_str());
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "pcmod %s: %s\n", command.c_str(), e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "pcmod %s: %s\n", command.c_str(), e.what());
    return kExitIo;
  }
}
