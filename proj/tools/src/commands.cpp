#include "pcmod/cli/commands.hpp"

#include <fmt/format.h>

#include "pcmod/cli/io.hpp"
#include "pcmod/dynamics.hpp"
#include "pcmod/isolator.hpp"
#include "pcmod/planner.hpp"
#include "pcmod/transfer.hpp"

namespace pcmod::cli {

using nlohmann::json;

const Artifact* CommandOutput::find(const std::filesystem::path& name) const {
  for (const auto& f : files)
    if (f.name == name) return &f;
  return nullptr;
}

namespace {

CouplerParams params_of(const RunConfig& c) { return CouplerParams(c.delta, c.kappa); }

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

json bloch_json(const BlochVector& b) { return json::array({b.u, b.v, b.w}); }

Protocol protocol_of(const CouplerParams& params, const std::vector<SegmentEntry>& entries) {
  std::vector<CouplingSegment> segs;
  for (const auto& e : entries) {
    const double t = e.duration ? *e.duration : time_from_omega_t_over_pi(params, *e.omega_t_over_pi);
    segs.emplace_back(e.phase, t);
  }
  try {
    return Protocol(std::move(segs));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid protocol: ") + e.what());
  }
}

struct LoadedPlan {
  CouplerParams params;
  Protocol protocol;
};

LoadedPlan load_plan(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("plan file " + path.string() + ": " + e.what());
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  if (!doc.is_object() || !doc.contains("delta") || !doc.contains("kappa") || !doc.contains("segments"))
    throw ConfigError("plan file " + path.string() + " needs delta, kappa and segments");
  try {
    CouplerParams params(doc["delta"].get<double>(), doc["kappa"].get<double>());
    return {params, protocol_from_json(doc["segments"])};
  } catch (const std::exception& e) {
    throw ConfigError("plan file " + path.string() + ": " + e.what());
  }
}

std::vector<BlochVector> bloch_path(const std::vector<TrajectorySample>& samples) {
  std::vector<BlochVector> path;
  path.reserve(samples.size());
  for (const auto& s : samples) path.push_back(to_bloch(s.state));
  return path;
}

void add_trajectory(CommandOutput& out, const RunConfig& c, const CouplerParams& params,
                    const Protocol& protocol, const std::vector<BlochVector>& markers,
                    const std::string& title) {
  const auto samples = propagate(params, protocol, ModeState::mode1(), c.samples);
  out.files.push_back({"trajectory.csv", trajectory_csv(params, samples)});
  if (c.svg) out.files.push_back({"bloch.svg", bloch_svg(bloch_path(samples), markers, title)});
}

double phi_or_pi(const RunConfig& c) { return c.phi ? *c.phi : kPi; }

}  // namespace

CommandOutput run_simulate(const RunConfig& c) {
  CouplerParams params = params_of(c);
  std::optional<Protocol> protocol;
  std::string source;

  if (!c.plan_file.empty()) {
    auto loaded = load_plan(c.plan_file);
    params = loaded.params;
    protocol.emplace(std::move(loaded.protocol));
    source = "plan_file";
  } else if (!c.protocol.empty()) {
    protocol.emplace(protocol_of(params, c.protocol));
    source = "protocol";
  } else if (c.solver == "pushpull") {
    try {
      protocol.emplace(to_protocol(pushpull_times(params)));
    } catch (const InfeasibleError& e) {
      throw ConfigError(e.what());
    }
    source = "pushpull";
  } else if (c.solver == "two_step") {
    const auto outcome = solve_two_step(params, phi_or_pi(c));
    protocol.emplace(to_protocol(outcome.solution));
    source = outcome.feasible ? "two_step" : "two_step (infeasible; best partial)";
  } else {
    throw ConfigError("simulate needs 'protocol', 'plan_file' or 'solver'");
  }

  const auto m = protocol_propagator(params, *protocol);
  const double achieved = m.apply(ModeState::mode1()).transferred();

  CommandOutput out;
  add_trajectory(out, c, params, *protocol, {},
                 fmt::format("delta/kappa0 = {:.4g}, |a2|^2 = {:.6f}", params.ratio(), achieved));
  json summary{{"delta", params.delta()},
               {"kappa", params.kappa0()},
               {"source", source},
               {"segments", protocol_json(params, *protocol)},
               {"total_duration", protocol->total_duration()},
               {"achieved", achieved},
               {"d", complex_json(m.d)},
               {"o", complex_json(m.o)}};
  out.files.push_back({"summary.json", dump(summary)});
  out.message = fmt::format("simulate: {} segment(s), final |a2|^2 = {}", protocol->size(),
                            format_double(achieved));
  return out;
}

CommandOutput run_feasibility(const RunConfig& c) {
  CommandOutput out;
  const auto map = feasibility_map(c.grid);
  out.files.push_back({"feasibility_map.csv", feasibility_csv(map)});
  out.files.push_back({"boundary.csv", boundary_csv(c.grid)});
  out.message = fmt::format("feasibility: {}x{} grid", c.grid, c.grid);
  return out;
}

CommandOutput run_transfer_map(const RunConfig& c) {
  const auto params = params_of(c);
  const double phi = phi_or_pi(c);
  const auto map = transfer_map(params, phi, c.grid);
  CommandOutput out;
  out.files.push_back({"map.csv", transfer_map_csv(map)});
  json summary{{"delta", params.delta()},
               {"kappa", params.kappa0()},
               {"phi", phi},
               {"grid", c.grid},
               {"grid_max", map.grid_max()},
               {"refined_peak", map.refined_peak},
               {"peak_omega_t1_over_pi", map.peak_t1},
               {"peak_omega_t2_over_pi", map.peak_t2}};
  if (params.kappa0() > 0.0) summary["two_step_feasible"] = two_step_feasible(params, phi);
  out.files.push_back({"map_summary.json", dump(summary)});
  out.message = fmt::format("transfer-map: peak |a2|^2 = {}", format_double(map.refined_peak));
  return out;
}

CommandOutput run_plan(const RunConfig& c) {
  const auto params = params_of(c);
  if (params.kappa0() == 0.0) throw ConfigError("plan needs kappa > 0");
  SearchOptions options;
  options.threshold = c.threshold;
  options.restarts = c.restarts;
  options.seed = c.seed;
  options.max_segments = c.max_segments;

  std::optional<SearchResult> searched;
  int exit_code = kExitOk;
  try {
    searched.emplace(minimal_plan_search(params, options));
  } catch (const SearchCapExceeded& e) {
    searched.emplace(e.best());
    exit_code = kExitSearchCap;
  }

  const auto& result = *searched;
  const auto& plan = result.plan;
  json log = json::array();
  for (const auto& e : result.log)
    log.push_back({{"segments", e.segments}, {"switches", e.segments - 1}, {"achieved", e.achieved}});
  json points = json::array();
  for (const auto& p : plan.switch_points) points.push_back(bloch_json(p));

  json doc{{"delta", params.delta()},
           {"kappa", params.kappa0()},
           {"threshold", c.threshold},
           {"seed", c.seed},
           {"convention", "switches counts switching events; segment_count = switches + 1"},
           {"segments", protocol_json(params, plan.protocol)},
           {"segment_count", plan.segments()},
           {"switches", plan.switches},
           {"achieved", plan.achieved},
           {"residual", plan.residual},
           {"total_duration", plan.protocol.total_duration()},
           {"estimate", result.estimate},
           {"found", result.found},
           {"switch_points", points},
           {"search_log", log}};

  CommandOutput out;
  out.exit_code = exit_code;
  out.files.push_back({"plan.json", dump(doc)});
  add_trajectory(out, c, params, plan.protocol, plan.switch_points,
                 fmt::format("delta/kappa0 = {:.4g}, {} switches, |a2|^2 = {:.6f}", params.ratio(),
                             plan.switches, plan.achieved));
  out.message = fmt::format("plan: {} segment(s) ({} switches), achieved {}, estimate {}{}",
                            plan.segments(), plan.switches, format_double(plan.achieved),
                            result.estimate, result.found ? "" : " [search cap exceeded]");
  return out;
}

CommandOutput run_isolator(const RunConfig& c) {
  const auto params = params_of(c);
  std::optional<Protocol> stage_protocol;
  if (!c.protocol.empty()) {
    stage_protocol.emplace(protocol_of(params, c.protocol));
  } else {
    try {
      const auto pp = pushpull_times(params);
      stage_protocol.emplace(std::vector<CouplingSegment>{CouplingSegment(0.0, pp.t1)});
    } catch (const InfeasibleError&) {
      throw ConfigError("isolator: default stage (first push-pull segment) needs |delta| < kappa; "
                        "give 'protocol' instead");
    }
  }
  const auto stage = protocol_propagator(params, *stage_protocol);

  PhasePair phases;
  double theta1 = 0.0;
  double theta2 = 0.0;
  if (!c.pass.empty()) {
    phases = optimal_phases(stage, c.pass == "forward" ? Direction::Forward : Direction::Backward);
    theta1 = phases.differential;
  } else {
    const auto def = optimal_phases();
    theta1 = c.theta1.value_or(def.differential);
    theta2 = c.theta2.value_or(0.0);
    phases = {theta1 - theta2, c.offset.value_or(def.offset)};
  }

  const IsolatorSpec spec{stage, theta1, theta2, phases.offset};
  const auto r = respond(spec);
  auto direction_json = [&](complex amp, double power, Direction d) {
    return json{{"cross_amplitude", complex_json(amp)},
                {"power", power},
                {"closed_form_power", closed_form_cross_power(spec, d)}};
  };
  json doc{{"delta", params.delta()},
           {"kappa", params.kappa0()},
           {"stage",
            {{"segments", protocol_json(params, *stage_protocol)},
             {"d", complex_json(stage.d)},
             {"o", complex_json(stage.o)},
             {"d_power", std::norm(stage.d)},
             {"o_power", std::norm(stage.o)}}},
           {"theta1", theta1},
           {"theta2", theta2},
           {"offset", phases.offset},
           {"forward", direction_json(r.forward12, r.forward_power, Direction::Forward)},
           {"backward", direction_json(r.backward12, r.backward_power, Direction::Backward)},
           {"contrast_db", r.contrast_db}};

  CommandOutput out;
  out.files.push_back({"response.json", dump(doc)});
  if (c.sweep) out.files.push_back({"contrast_map.csv", contrast_csv(contrast_sweep(stage, c.grid))});
  if (c.svg) {
    for (const auto d : {Direction::Forward, Direction::Backward}) {
      const bool fwd = d == Direction::Forward;
      const auto path = cascade_trajectory(params, *stage_protocol, phases, d, c.samples);
      out.files.push_back(
          {fwd ? "isolator_forward.svg" : "isolator_backward.svg",
           bloch_svg(path, {path.back()},
                     fmt::format("{} pass, cross power {:.6f}", fwd ? "forward" : "backward",
                                 fwd ? r.forward_power : r.backward_power))});
    }
  }
  out.message = fmt::format("isolator: forward {}, backward {}, contrast {} dB",
                            format_double(r.forward_power), format_double(r.backward_power),
                            format_double(r.contrast_db));
  return out;
}

CommandOutput run_verify(const RunConfig& c) {
  const auto report = verify_report(c);
  CommandOutput out;
  out.files.push_back({"report.json", dump(report)});
  const bool passed = report["passed"].get<bool>();
  out.exit_code = passed ? kExitOk : kExitFailure;
  int failed = 0;
  for (const auto& check : report["checks"])
    if (!check["passed"].get<bool>()) ++failed;
  out.message = passed ? fmt::format("verify: all {} checks passed", report["checks"].size())
                       : fmt::format("verify: {} of {} checks FAILED", failed, report["checks"].size());
  return out;
}

void write_outputs(const RunConfig& c, const CommandOutput& output) {
  for (const auto& f : output.files) write_file(c.out / f.name, f.content);
}

}  // namespace pcmod::cli
