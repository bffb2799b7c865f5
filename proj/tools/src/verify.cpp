#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "pcmod/bloch.hpp"
#include "pcmod/cli/commands.hpp"
#include "pcmod/dynamics.hpp"
#include "pcmod/isolator.hpp"
#include "pcmod/oracle.hpp"
#include "pcmod/planner.hpp"
#include "pcmod/transfer.hpp"

// Invariant battery for `pcmod verify`. Every tolerance is pinned here.

namespace pcmod::cli {

using nlohmann::json;

namespace {

constexpr double kUnitarityTol = 1e-12;
constexpr double kNormTol = 1e-12;
constexpr double kSemigroupTol = 1e-12;
constexpr double kStaticBoundTol = 1e-9;
constexpr double kOracleTol = 1e-8;
constexpr double kOracleDriftTol = 1e-10;
constexpr double kExpmTol = 1e-10;
constexpr double kRepresentationTol = 1e-10;
constexpr double kRigidityTol = 1e-10;
constexpr double kConeTol = 1e-9;
constexpr double kBruteThreshold = 1e-6;  // complete transfer means |a2|^2 >= 1 - this
constexpr double kBandHalfWidth = 0.01;   // in cos(phi)
constexpr double kAgreementFloor = 0.99;
constexpr double kPushPullTol = 1e-9;
constexpr double kRatioLo = 12.0;
constexpr double kRatioHi = 20.0;
constexpr double kIsolatorTol = 1e-12;

struct Check {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  double tolerance = 0.0;
  json detail = json::object();
};

json to_json(const Check& c) {
  return {{"name", c.name},
          {"passed", c.passed},
          {"max_residual", c.max_residual},
          {"tolerance", c.tolerance},
          {"detail", c.detail}};
}

Check bounded(std::string name, double residual, double tol, json detail = json::object()) {
  return {std::move(name), residual <= tol, residual, tol, std::move(detail)};
}

class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  CouplerParams params() { return CouplerParams(uniform(-3.0, 3.0), uniform(0.2, 2.0)); }

  /// 1..max_segments segments with Omega t in [lo, hi] * pi.
  std::vector<CouplingSegment> protocol(const CouplerParams& p, int max_segments, double lo = 0.0,
                                        double hi = 1.0) {
    const double omega = rabi_frequency(p);
    std::vector<CouplingSegment> segs;
    const int n = integer(1, max_segments);
    for (int i = 0; i < n; ++i)
      segs.emplace_back(uniform(0.0, kTwoPi), uniform(lo, hi) * kPi / omega);
    return segs;
  }

  ModeState state() {
    const double theta = uniform(0.0, kPi);
    const double phase = uniform(0.0, kTwoPi);
    return {{std::cos(theta / 2.0), 0.0}, std::polar(std::sin(theta / 2.0), phase)};
  }

private:
  std::mt19937_64 rng_;
};

double matrix_gap(const TransferMatrix& a, const TransferMatrix& b) {
  return std::max(std::abs(a.d - b.d), std::abs(a.o - b.o));
}

double vec_gap(const BlochVector& a, const BlochVector& b) { return (a.vec() - b.vec()).cwiseAbs().maxCoeff(); }

oracle::IntegrationConfig rk4_config(const RunConfig& c, const CouplerParams& p) {
  auto cfg = oracle::IntegrationConfig::defaults(p);
  if (c.oracle_step > 0.0) cfg.step = c.oracle_step / rabi_frequency(p);
  return cfg;
}

BlochVector chained_bloch(const CouplerParams& p, std::span<const CouplingSegment> segs, double tau) {
  BlochVector s = BlochVector::north();
  double elapsed = 0.0;
  for (const auto& seg : segs) {
    const double dt = std::min(seg.duration(), tau - elapsed);
    if (dt <= 0.0) break;
    s = bloch_precess(rotation_axis(p, seg.phase()), s, dt);
    elapsed += seg.duration();
  }
  return s;
}

bool in_band(double ratio, double phi) {
  return std::abs(std::cos(phi) - (1.0 - 2.0 * ratio * ratio)) < kBandHalfWidth;
}

Check unitarity(Sampler& rng) {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = rng.params();
    const CouplingSegment seg(rng.uniform(0.0, kTwoPi), rng.uniform(0.0, 20.0));
    worst = std::max(worst, std::abs(segment_propagator(p, seg).unitarity_defect()));
  }
  for (int i = 0; i < 1000; ++i) {
    const auto p = rng.params();
    const auto segs = rng.protocol(p, 8);
    worst = std::max(worst, std::abs(protocol_propagator(p, segs).unitarity_defect()));
  }
  return bounded("unitarity", worst, kUnitarityTol, {{"segments", 10000}, {"protocols", 1000}});
}

Check norm_conservation(Sampler& rng) {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto p = rng.params();
    const auto segs = rng.protocol(p, 8);
    for (const auto& s : propagate(p, segs, rng.state(), 200))
      worst = std::max(worst, std::abs(s.state.norm_sq() - 1.0));
  }
  return bounded("norm_conservation", worst, kNormTol, {{"protocols", 200}, {"samples_each", 200}});
}

Check semigroup(Sampler& rng) {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = rng.params();
    const double phase = rng.uniform(0.0, kTwoPi);
    const double t1 = rng.uniform(0.0, 5.0);
    const double t2 = rng.uniform(0.0, 5.0);
    const auto whole = segment_propagator(p, CouplingSegment(phase, t1 + t2));
    const auto parts = compose(segment_propagator(p, CouplingSegment(phase, t2)),
                               segment_propagator(p, CouplingSegment(phase, t1)));
    worst = std::max(worst, matrix_gap(whole, parts));
  }
  return bounded("semigroup", worst, kSemigroupTol, {{"cases", 1000}});
}

Check static_bound(Sampler& rng) {
  constexpr int kGrid = 257;  // odd, so Omega t = pi/2 is a grid point
  double excess = 0.0;
  double attain_gap = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const CouplerParams p(rng.uniform(-5.0, 5.0), rng.uniform(0.05, 3.0));
    const double bound = static_max_transfer(p);
    double best = 0.0;
    for (int k = 0; k < kGrid; ++k) {
      const double t = time_from_omega_t_over_pi(p, static_cast<double>(k) / (kGrid - 1));
      best = std::max(best, std::norm(segment_propagator(p, CouplingSegment(0.0, t)).o));
    }
    excess = std::max(excess, best - bound);
    attain_gap = std::max(attain_gap, std::abs(best - bound));
  }
  return bounded("static_bound", std::max(excess, attain_gap), kStaticBoundTol,
                 {{"pairs", 10000}, {"grid", kGrid}, {"max_excess", excess}, {"max_attain_gap", attain_gap}});
}

Check oracle_equivalence(Sampler& rng, const RunConfig& c, bool fault) {
  double worst = 0.0;
  double drift = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto p = rng.params();
    const auto segs = rng.protocol(p, 8);
    const auto cfg = rk4_config(c, p);
    const auto reference = oracle::integrate_propagator(p, segs, cfg);
    const CouplerParams analytic = fault ? CouplerParams(-p.delta(), p.kappa0()) : p;
    worst = std::max(worst, oracle::max_entry_error(reference, protocol_propagator(analytic, segs)));
    const auto end = oracle::integrate(p, segs, ModeState::mode1(), cfg);
    drift = std::max(drift, std::abs(end.norm_sq() - 1.0));
  }
  Check check = bounded("oracle_equivalence", worst, kOracleTol,
                        {{"protocols", 50}, {"max_segments", 8}, {"rk4_norm_drift", drift},
                         {"rk4_norm_drift_tolerance", kOracleDriftTol}});
  check.passed = check.passed && drift <= kOracleDriftTol;
  return check;
}

Check expm_equivalence(Sampler& rng, bool fault) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = rng.params();
    const CouplingSegment seg(rng.uniform(0.0, kTwoPi), rng.uniform(0.0, 10.0));
    const CouplerParams analytic = fault ? CouplerParams(-p.delta(), p.kappa0()) : p;
    worst = std::max(worst, oracle::max_entry_error(oracle::exp_generator(p, seg.phase(), seg.duration()),
                                                    segment_propagator(analytic, seg)));
  }
  return bounded("expm_equivalence", worst, kExpmTol, {{"points", 100}});
}

Check representation_consistency(Sampler& rng) {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto p = rng.params();
    const auto segs = rng.protocol(p, 8);
    for (const auto& s : propagate(p, segs, ModeState::mode1(), 101))
      worst = std::max(worst, vec_gap(to_bloch(s.state), chained_bloch(p, segs, s.time)));
  }
  return bounded("representation_consistency", worst, kRepresentationTol, {{"protocols", 200}});
}

Check precession_rigidity(Sampler& rng) {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto p = rng.params();
    const CouplingSegment seg(rng.uniform(0.0, kTwoPi), rng.uniform(0.1, 10.0));
    const auto n = rotation_axis(p, seg.phase()).n;
    const std::vector<CouplingSegment> one{seg};
    const auto samples = propagate(p, one, rng.state(), 50);
    const double first = n.dot(to_bloch(samples.front().state).vec());
    for (const auto& s : samples) worst = std::max(worst, std::abs(n.dot(to_bloch(s.state).vec()) - first));
  }
  return bounded("precession_rigidity", worst, kRigidityTol, {{"segments", 500}});
}

Check cone_invariant(Sampler& rng) {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double delta = rng.uniform(-3.0, 3.0);
    if (std::abs(delta) < 1e-3) delta = 1e-3;
    const CouplerParams p(delta, 1.0);
    const double floor = -std::cos(cone_aperture(p));
    const std::vector<CouplingSegment> one{CouplingSegment(rng.uniform(0.0, kTwoPi),
                                                           rng.uniform(0.5, 3.0) * kPi / rabi_frequency(p))};
    for (const auto& s : propagate(p, one, ModeState::mode1(), 512))
      worst = std::max(worst, floor - to_bloch(s.state).w);
  }
  return bounded("cone_invariant", std::max(worst, 0.0), kConeTol, {{"evolutions", 1000}, {"grid", 512}});
}

Check criterion_vs_brute_force() {
  constexpr int kN = 50;
  int outside = 0;
  int agree = 0;
  json disagreements = json::array();
  for (int i = 0; i < kN; ++i) {
    const double ratio = static_cast<double>(i) / (kN - 1);
    const CouplerParams p(ratio, 1.0);
    for (int j = 0; j < kN; ++j) {
      const double phi = kPi * j / (kN - 1);
      if (in_band(ratio, phi)) continue;
      ++outside;
      const bool predicted = two_step_feasible(p, phi);
      const auto brute = oracle::brute_force_two_step_max(p, phi);
      const bool observed = brute.transferred >= 1.0 - kBruteThreshold;
      if (predicted == observed) {
        ++agree;
      } else {
        disagreements.push_back({{"ratio", ratio}, {"phi", phi}, {"brute_force_max", brute.transferred}});
      }
    }
  }
  const double fraction = static_cast<double>(agree) / outside;
  return {"criterion_vs_brute_force", fraction >= kAgreementFloor, 1.0 - fraction, 1.0 - kAgreementFloor,
          {{"grid", kN}, {"cells_outside_band", outside}, {"agreeing", agree},
           {"band_half_width_cos_phi", kBandHalfWidth}, {"disagreements", disagreements}}};
}

Check solver_agreement(Sampler& rng) {
  int cases = 0;
  int mismatches = 0;
  double worst_d = 0.0;
  while (cases < 500) {
    const double ratio = rng.uniform(0.0, 1.0);
    const double phi = rng.uniform(0.0, kPi);
    if (in_band(ratio, phi)) continue;
    ++cases;
    const CouplerParams p(ratio, 1.0);
    const auto outcome = solve_two_step(p, phi);
    if (outcome.feasible != two_step_feasible(p, phi)) ++mismatches;
    if (outcome.feasible)
      worst_d = std::max(worst_d, std::abs(protocol_propagator(p, to_protocol(outcome.solution)).d));
  }
  Check check = bounded("solver_criterion_agreement", worst_d, kPushPullTol,
                        {{"cases", cases}, {"mismatches", mismatches}});
  check.passed = check.passed && mismatches == 0;
  return check;
}

Check pushpull_closed_form(Sampler& rng) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CouplerParams p(rng.uniform(0.0, 0.99), 1.0);
    worst = std::max(worst, std::abs(protocol_propagator(p, to_protocol(pushpull_times(p))).d));
  }
  return bounded("pushpull_closed_form", worst, kPushPullTol, {{"cases", 100}});
}

Check convergence_order(Sampler& rng) {
  constexpr double kBaseStep = 0.05;  // in units of 1/Omega
  double lo = 1e300;
  double hi = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto p = rng.params();
    const double omega = rabi_frequency(p);
    const double h0 = kBaseStep / omega;
    std::vector<CouplingSegment> segs;
    const int n = rng.integer(1, 8);
    for (int k = 0; k < n; ++k) {
      const double t = std::round(rng.uniform(0.25, 1.0) * kPi / omega / h0) * h0;
      segs.emplace_back(rng.uniform(0.0, kTwoPi), t);
    }
    const auto exact = protocol_propagator(p, segs);
    double err[3];
    for (int level = 0; level < 3; ++level) {
      oracle::IntegrationConfig cfg{h0 / std::pow(2.0, level), false};
      err[level] = oracle::max_entry_error(oracle::integrate_propagator(p, segs, cfg), exact);
    }
    for (int level = 0; level < 2; ++level) {
      const double r = err[level] / err[level + 1];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  const bool ok = lo >= kRatioLo && hi <= kRatioHi;
  return {"convergence_order", ok, std::max({0.0, kRatioLo - lo, hi - kRatioHi}), 0.0,
          {{"protocols", 20}, {"base_step_omega", kBaseStep}, {"min_ratio", lo}, {"max_ratio", hi},
           {"allowed", json::array({kRatioLo, kRatioHi})}}};
}

TransferMatrix random_stage(Sampler& rng) {
  const auto p = rng.params();
  return segment_propagator(p, CouplingSegment(rng.uniform(0.0, kTwoPi), rng.uniform(0.0, 5.0)));
}

/// D = cos(kappa0 t) is real at zero detuning.
TransferMatrix real_stage(Sampler& rng) {
  return segment_propagator(CouplerParams(0.0, 1.0),
                            CouplingSegment(rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kPi)));
}

Check isolator_closed_form(Sampler& rng) {
  double worst = 0.0;
  double literal_real = 0.0;
  double row_norm = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const IsolatorSpec spec{random_stage(rng), rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi),
                            rng.uniform(0.0, kTwoPi)};
    for (const auto d : {Direction::Forward, Direction::Backward}) {
      worst = std::max(worst, std::abs(cross_transmission_power(spec, d) - closed_form_cross_power(spec, d)));
      const auto m = cascade(spec, d);
      row_norm = std::max(row_norm, std::abs(std::norm(m(0, 0)) + std::norm(m(0, 1)) - 1.0));
    }
    const IsolatorSpec real{real_stage(rng), spec.theta1, spec.theta2, spec.offset};
    const double d2 = std::norm(real.stage.d);
    const double o2 = std::norm(real.stage.o);
    const double dtheta = real.theta1 - real.theta2;
    literal_real = std::max(
        {literal_real,
         std::abs(cross_transmission_power(real, Direction::Forward) -
                  2.0 * d2 * o2 * (1.0 + std::cos(dtheta + real.offset))),
         std::abs(cross_transmission_power(real, Direction::Backward) -
                  2.0 * d2 * o2 * (1.0 + std::cos(dtheta - real.offset)))});
  }
  const double residual = std::max({worst, literal_real, row_norm});
  return bounded("isolator_closed_form", residual, kIsolatorTol,
                 {{"specs", 1000},
                  {"general_form_max_error", worst},
                  {"real_d_textbook_form_max_error", literal_real},
                  {"row_norm_max_error", row_norm}});
}

Check isolator_reciprocity(Sampler& rng) {
  double offset_lines = 0.0;
  double dtheta_lines_real = 0.0;
  double dtheta_lines_complex = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto stage = random_stage(rng);
    const auto real = real_stage(rng);
    const double free = rng.uniform(0.0, kTwoPi);
    const double line = rng.integer(0, 1) * kPi;
    auto asym = [](const IsolatorSpec& s) {
      return std::abs(cross_transmission_power(s, Direction::Forward) -
                      cross_transmission_power(s, Direction::Backward));
    };
    offset_lines = std::max(offset_lines, asym({stage, free, 0.0, line}));
    dtheta_lines_real = std::max(dtheta_lines_real, asym({real, line, 0.0, free}));
    dtheta_lines_complex = std::max(dtheta_lines_complex, asym({stage, line, 0.0, free}));
  }
  return bounded("isolator_reciprocity", std::max(offset_lines, dtheta_lines_real), kIsolatorTol,
                 {{"offset_in_0_pi_any_stage", offset_lines},
                  {"dtheta_in_0_pi_real_d_stage", dtheta_lines_real},
                  {"dtheta_in_0_pi_complex_d_stage_informational", dtheta_lines_complex},
                  {"note", "dtheta in {0, pi} restores reciprocity only when arg D is a multiple of pi/2"}});
}

Check isolator_extremes() {
  // Balanced real-D stage: zero detuning, kappa0 t = pi/4.
  const auto balanced = segment_propagator(CouplerParams(0.0, 1.0), CouplingSegment(0.0, kPi / 4.0));
  const auto ph = optimal_phases();
  const auto r = respond({balanced, ph.differential, 0.0, ph.offset});
  double residual = std::max(r.forward_power, std::abs(r.backward_power - 1.0));

  // First push-pull segment at delta/kappa0 = 0.5: balanced but with complex D.
  const CouplerParams p(0.5, 1.0);
  const Protocol half({CouplingSegment(0.0, pushpull_times(p).t1)});
  const auto stage = protocol_propagator(p, half);
  const auto fwd_pass = optimal_phases(stage, Direction::Forward);
  const auto rc = respond({stage, fwd_pass.differential, 0.0, fwd_pass.offset});
  residual = std::max({residual, std::abs(rc.forward_power - 1.0), rc.backward_power});

  const double w_fwd = cascade_trajectory(p, half, fwd_pass, Direction::Forward).back().w;
  const double w_bwd = cascade_trajectory(p, half, fwd_pass, Direction::Backward).back().w;
  const auto literal = respond({stage, ph.differential, 0.0, ph.offset});

  Check check = bounded("isolator_extremes", residual, kIsolatorTol,
                        {{"balanced_real_stage", {{"forward", r.forward_power}, {"backward", r.backward_power}}},
                         {"pushpull_half_stage_compensated",
                          {{"forward", rc.forward_power}, {"backward", rc.backward_power},
                           {"forward_final_w", w_fwd}, {"backward_final_w", w_bwd}}},
                         {"pushpull_half_stage_uncompensated_pi2_pi2",
                          {{"forward", literal.forward_power}, {"backward", literal.backward_power}}}});
  check.passed = check.passed && w_fwd <= -1.0 + 1e-6 && w_bwd > 0.0;
  return check;
}

json point_verdict(const char* label, double phi) {
  const CouplerParams p(0.5, 1.0);
  const bool predicted = two_step_feasible(p, phi);
  const auto brute = oracle::brute_force_two_step_max(p, phi);
  const bool observed = brute.transferred >= 1.0 - kBruteThreshold;
  return {{"label", label},
          {"ratio", 0.5},
          {"phi", phi},
          {"criterion_feasible", predicted},
          {"brute_force_max", brute.transferred},
          {"brute_force_feasible", observed},
          {"agree", predicted == observed}};
}

Check p1p2_adjudication(json& out) {
  const auto p1 = point_verdict("P1", kPi / 4.0);
  const auto p2 = point_verdict("P2", kPi / 2.0);
  const bool agree = p1["agree"].get<bool>() && p2["agree"].get<bool>();
  const bool p1_inf = !p1["brute_force_feasible"].get<bool>();
  const bool p2_feas = p2["brute_force_feasible"].get<bool>();
  out = {{"P1", p1},
         {"P2", p2},
         {"verdict", fmt::format("P1 (phi = pi/4) is {}; P2 (phi = pi/2) is {}; the analytic criterion {} "
                                 "with brute force",
                                 p1_inf ? "infeasible" : "feasible", p2_feas ? "feasible" : "infeasible",
                                 agree ? "agrees" : "disagrees")}};
  return {"p1p2_adjudication", agree, agree ? 0.0 : 1.0, 0.0, out};
}

Check plan_oracle(const RunConfig& c) {
  const CouplerParams p(2.0, 1.0);
  SearchOptions opt;
  opt.restarts = c.restarts;
  opt.seed = c.seed;
  const auto result = minimal_plan_search(p, opt);
  const auto rk4 = oracle::integrate(p, result.plan.protocol.segments(), ModeState::mode1(), rk4_config(c, p));
  const double gap = std::abs(rk4.transferred() - result.plan.achieved);
  const bool circles = recursive_intersection_ok(precession_circles(p, result.plan.protocol), 1e-8);
  Check check = bounded("plan_oracle_agreement", gap, kOracleTol,
                        {{"ratio", 2.0},
                         {"segments", result.plan.segments()},
                         {"switches", result.plan.switches},
                         {"achieved", result.plan.achieved},
                         {"recursive_intersection_ok", circles}});
  check.passed = check.passed && circles && result.plan.achieved >= 0.99;
  return check;
}

Check determinism(const RunConfig& base) {
  RunConfig c = base;
  c.delta = 0.5;
  c.kappa = 1.0;
  c.grid = 32;
  c.samples = 101;
  c.solver = "pushpull";
  c.protocol.clear();
  c.plan_file.clear();
  std::vector<std::string> names;
  auto run_all = [&] {
    std::vector<CommandOutput> outs{run_simulate(c), run_transfer_map(c), run_feasibility(c)};
    RunConfig planc = c;
    planc.delta = 2.0;
    outs.push_back(run_plan(planc));
    return outs;
  };
  const auto a = run_all();
  const auto b = run_all();
  int files = 0;
  int differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].files.size(); ++k) {
      ++files;
      if (a[i].files[k].content != b[i].files[k].content) ++differing;
    }
  return {"determinism", differing == 0, static_cast<double>(differing), 0.0,
          {{"files_compared", files}, {"differing", differing}}};
}

}  // namespace

json verify_report(const RunConfig& c) {
  const bool fault = c.inject_fault == "delta_sign";
  Sampler rng(c.seed);
  json p1p2;
  std::vector<Check> checks;
  checks.push_back(unitarity(rng));
  checks.push_back(norm_conservation(rng));
  checks.push_back(semigroup(rng));
  checks.push_back(static_bound(rng));
  checks.push_back(oracle_equivalence(rng, c, fault));
  checks.push_back(expm_equivalence(rng, fault));
  checks.push_back(representation_consistency(rng));
  checks.push_back(precession_rigidity(rng));
  checks.push_back(cone_invariant(rng));
  checks.push_back(criterion_vs_brute_force());
  checks.push_back(solver_agreement(rng));
  checks.push_back(pushpull_closed_form(rng));
  checks.push_back(convergence_order(rng));
  checks.push_back(isolator_closed_form(rng));
  checks.push_back(isolator_reciprocity(rng));
  checks.push_back(isolator_extremes());
  checks.push_back(p1p2_adjudication(p1p2));
  checks.push_back(plan_oracle(c));
  checks.push_back(determinism(c));

  json list = json::array();
  bool passed = true;
  for (const auto& check : checks) {
    list.push_back(to_json(check));
    passed = passed && check.passed;
  }
  return {{"passed", passed},
          {"seed", c.seed},
          {"inject_fault", fault ? "delta_sign" : "none"},
          {"p1p2_adjudication", p1p2},
          {"checks", list}};
}

}  // namespace pcmod::cli
