#include "pcmod/planner.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "parallel.hpp"
#include "pcmod/dynamics.hpp"
#include "pcmod/optimize.hpp"

namespace pcmod {

namespace {

constexpr int kCandidates = 256;
constexpr int kPhaseSamples = 64;

// Deepest polar angle reached on the circle about `axis` through `p`.
double circle_depth(const RotationAxis& axis, const BlochVector& p) {
  const double axis_polar = angle_between(axis.n, Vec3::UnitZ());
  const double radius = angle_between(axis.n, p.vec());
  return std::min(axis_polar + radius, kTwoPi - axis_polar - radius);
}

struct NextPhase {
  double phase;
  double depth;
};

// Continuous search over [0, 2pi) for the next phase maximizing circle depth;
// ties favour the larger instantaneous descent rate.
NextPhase best_next_phase(const CouplerParams& params, const BlochVector& p) {
  auto depth_at = [&](double phi) { return circle_depth(rotation_axis(params, phi), p); };
  int best = 0;
  double best_depth = -1.0;
  double best_rate = -1e300;
  for (int k = 0; k < kPhaseSamples; ++k) {
    const double phi = kTwoPi * k / kPhaseSamples;
    const double depth = depth_at(phi);
    const double rate = descent_rate(rotation_axis(params, phi), p);
    if (depth > best_depth + 1e-12 || (std::abs(depth - best_depth) <= 1e-12 && rate > best_rate)) {
      best = k;
      best_depth = depth;
      best_rate = rate;
    }
  }
  const double step = kTwoPi / kPhaseSamples;
  const double center = step * best;
  const double phi = golden_section_max(depth_at, center - step, center + step);
  const double refined = depth_at(phi);
  if (refined >= best_depth) return {reduce_phase(phi), refined};
  return {reduce_phase(center), best_depth};
}

// Phase whose circle through `p` also contains the South pole; requires
// polar(p) >= 2|psi|. Of the two solutions, the one with the shorter final arc.
double final_phase(const CouplerParams& params, const BlochVector& p) {
  const double omega = rabi_frequency(params);
  const double s = params.delta() / omega;
  const double c = params.kappa0() / omega;
  const double theta = p.polar();
  const double azimuth = std::atan2(p.v, p.u);
  const double sin_theta = std::sin(theta);
  if (sin_theta < 1e-15) return reduce_phase(azimuth);
  const double x = std::clamp(-s * (1.0 + std::cos(theta)) / (c * sin_theta), -1.0, 1.0);
  const double spread = std::acos(x);
  const auto south = BlochVector::south();
  double best_phase = 0.0;
  double best_time = 1e300;
  for (double phi : {azimuth + spread, azimuth - spread}) {
    const auto axis = rotation_axis(params, phi);
    const double t = precession_time(axis, p, south);
    if (t < best_time) {
      best_time = t;
      best_phase = phi;
    }
  }
  return reduce_phase(best_phase);
}

bool passes_south(const RotationAxis& axis, const BlochVector& s) {
  return std::abs(angle_between(axis.n, s.vec()) - angle_between(axis.n, -Vec3::UnitZ())) <=
         kAngleTol;
}

// t in (0, period] at which the orbit of `s` about `axis` is deepest.
double deepest_time(const RotationAxis& axis, const BlochVector& s, double period) {
  int best = 0;
  double best_polar = -1.0;
  for (int k = 1; k <= kCandidates; ++k) {
    const double polar = bloch_precess(axis, s, period * k / kCandidates).polar();
    if (polar > best_polar) {
      best_polar = polar;
      best = k;
    }
  }
  const double step = period / kCandidates;
  const double center = step * best;
  const double t = golden_section_max(
      [&](double tau) { return bloch_precess(axis, s, tau).polar(); }, center - step,
      center + step);
  return bloch_precess(axis, s, t).polar() >= best_polar ? std::clamp(t, 0.0, period) : center;
}

std::vector<double> pack(const CouplerParams& params, const Protocol& protocol) {
  const double omega = rabi_frequency(params);
  std::vector<double> x;
  for (const auto& s : protocol.segments()) x.push_back(s.duration() * omega);
  for (const auto& s : protocol.segments()) x.push_back(s.phase());
  return x;
}

std::vector<CouplingSegment> unpack(const CouplerParams& params, std::span<const double> x) {
  const double omega = rabi_frequency(params);
  const std::size_t k = x.size() / 2;
  std::vector<CouplingSegment> segs;
  segs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) segs.emplace_back(x[k + i], std::abs(x[i]) / omega);
  return segs;
}

bool better(const StaircasePlan& a, const StaircasePlan& b) {
  if (a.achieved != b.achieved) return a.achieved > b.achieved;
  if (a.segments() != b.segments()) return a.segments() < b.segments();
  return a.protocol.total_duration() < b.protocol.total_duration();
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Protocol restart_seed(const CouplerParams& params, const StaircasePlan& greedy, int segments,
                      int restart, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double omega = rabi_frequency(params);
  std::vector<CouplingSegment> segs;
  if (restart % 2 == 0) {
    // jittered greedy plan, padded with alternating quarter turns
    const auto base = greedy.protocol.segments();
    for (int i = 0; i < segments; ++i) {
      double phase;
      double wt;
      if (i < static_cast<int>(base.size())) {
        phase = base[i].phase();
        wt = base[i].duration() * omega;
      } else {
        phase = (i % 2) * kPi;
        wt = 0.5 * kPi;
      }
      phase += 0.6 * (unit(rng) - 0.5);
      wt *= 0.8 + 0.4 * unit(rng);
      segs.emplace_back(phase, wt / omega);
    }
  } else {
    // alternating push-pull staircase with random arcs
    for (int i = 0; i < segments; ++i) {
      const double phase = (i % 2) * kPi + 0.4 * (unit(rng) - 0.5);
      const double wt = kPi * (0.25 + 0.25 * unit(rng));
      segs.emplace_back(phase, wt / omega);
    }
  }
  return Protocol(std::move(segs));
}

}  // namespace

StaircasePlan make_plan(const CouplerParams& params, Protocol protocol) {
  std::vector<BlochVector> switch_points;
  ModeState state = ModeState::mode1();
  const auto segs = protocol.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    state = segment_propagator(params, segs[i]).apply(state);
    if (i + 1 < segs.size()) switch_points.push_back(to_bloch(state));
  }
  const double achieved = state.transferred();
  const int switches = static_cast<int>(segs.size()) - 1;
  return {std::move(protocol), std::move(switch_points), achieved, switches, 1.0 - achieved};
}

std::vector<SphericalCircle> precession_circles(const CouplerParams& params,
                                                const Protocol& protocol) {
  std::vector<SphericalCircle> circles;
  ModeState state = ModeState::mode1();
  for (const auto& seg : protocol.segments()) {
    circles.push_back(circle_through(rotation_axis(params, seg.phase()), to_bloch(state)));
    state = segment_propagator(params, seg).apply(state);
  }
  return circles;
}

int min_switches_estimate(double ratio) {
  if (!(ratio > 0.0)) throw std::invalid_argument("detuning ratio must be positive");
  const double value = kPi / (4.0 * std::atan(1.0 / ratio));
  return std::max(1, static_cast<int>(std::ceil(value - 1e-12)));
}

bool recursive_intersection_ok(std::span<const SphericalCircle> circles, double tolerance) {
  if (circles.size() < 2) throw std::invalid_argument("need at least two circles");
  for (std::size_t i = 0; i + 1 < circles.size(); ++i) {
    const double d = angle_between(circles[i].center, circles[i + 1].center);
    const double r1 = circles[i].radius;
    const double r2 = circles[i + 1].radius;
    if (std::abs(r2 - r1) > d + tolerance) return false;
    if (d > r1 + r2 + tolerance) return false;
  }
  return true;
}

StaircasePlan greedy_staircase(const CouplerParams& params, int max_segments) {
  if (!(params.kappa0() > 0.0))
    throw std::invalid_argument("no descent possible without coupling (kappa0 == 0)");
  if (max_segments < 2) throw std::invalid_argument("max_segments must be >= 2");

  const double period = kPi / rabi_frequency(params);
  const double switch_polar = 2.0 * std::abs(elevation_angle(params));
  const auto south = BlochVector::south();

  std::vector<CouplingSegment> segs;
  BlochVector s = BlochVector::north();
  double phase = 0.0;
  for (int i = 0; i < max_segments; ++i) {
    const auto axis = rotation_axis(params, phase);
    if (passes_south(axis, s)) {
      segs.emplace_back(phase, precession_time(axis, s, south));
      break;
    }
    if (i == max_segments - 1) {
      segs.emplace_back(phase, deepest_time(axis, s, period));
      break;
    }

    // earliest candidate from which a circle through the South pole exists
    std::optional<double> switch_time;
    double prev_t = 0.0;
    for (int k = 1; k <= kCandidates; ++k) {
      const double t = period * k / kCandidates;
      if (bloch_precess(axis, s, t).polar() >= switch_polar) {
        double lo = prev_t;
        double hi = t;
        for (int iter = 0; iter < 200 && hi - lo > 1e-16 * period; ++iter) {
          const double mid = 0.5 * (lo + hi);
          if (bloch_precess(axis, s, mid).polar() >= switch_polar) hi = mid;
          else lo = mid;
        }
        switch_time = hi;
        break;
      }
      prev_t = t;
    }
    if (!switch_time) {
      // the orbit only grazes the threshold: accept its deepest point if close enough
      const double t = deepest_time(axis, s, period);
      if (bloch_precess(axis, s, t).polar() >= switch_polar - kAngleTol) switch_time = t;
    }

    double t_switch;
    double next_phase;
    if (switch_time) {
      t_switch = *switch_time;
      next_phase = final_phase(params, bloch_precess(axis, s, t_switch));
    } else {
      // deepest reachable next circle over candidate switch states
      auto score = [&](double t) {
        return best_next_phase(params, bloch_precess(axis, s, t)).depth;
      };
      int best = 1;
      double best_score = -1.0;
      for (int k = 1; k <= kCandidates; ++k) {
        const double sc = score(period * k / kCandidates);
        if (sc > best_score + 1e-12) {
          best_score = sc;
          best = k;
        }
      }
      const double step = period / kCandidates;
      const double center = step * best;
      const double refined = golden_section_max(score, center - step, center + step, 1e-12);
      t_switch = score(refined) >= best_score ? std::clamp(refined, 0.0, period) : center;
      next_phase = best_next_phase(params, bloch_precess(axis, s, t_switch)).phase;
    }
    segs.emplace_back(phase, t_switch);
    s = bloch_precess(axis, s, t_switch);
    phase = next_phase;
  }
  return refine_plan(params, make_plan(params, Protocol(std::move(segs))));
}

StaircasePlan refine_plan(const CouplerParams& params, const StaircasePlan& plan) {
  if (plan.achieved >= 1.0 - 1e-15) return plan;
  auto objective = [&](std::span<const double> x) {
    const auto segs = unpack(params, x);
    return 1.0 - protocol_propagator(params, segs).apply(ModeState::mode1()).transferred();
  };
  auto x0 = pack(params, plan.protocol);
  NelderMeadOptions opt;
  opt.initial_step = 0.05;
  opt.max_evaluations = 1500 * static_cast<int>(x0.size());
  opt.restarts = 3;
  opt.f_tolerance = 1e-17;
  const auto r = nelder_mead(objective, std::move(x0), opt);
  auto segs = unpack(params, r.x);
  double total = 0.0;
  for (const auto& seg : segs) total += seg.duration();
  if (!(total > 0.0)) return plan;
  auto refined = make_plan(params, Protocol(std::move(segs)));
  return refined.achieved > plan.achieved ? refined : plan;
}

SearchCapExceeded::SearchCapExceeded(SearchResult best)
    : std::runtime_error("no plan reached the threshold within the segment cap"),
      best_(std::move(best)) {}

SearchResult minimal_plan_search(const CouplerParams& params, const SearchOptions& options) {
  if (!(params.kappa0() > 0.0)) throw std::invalid_argument("minimal_plan_search needs kappa0 > 0");
  if (!(options.threshold > 0.0 && options.threshold <= 1.0))
    throw std::invalid_argument("threshold must lie in (0, 1]");
  if (options.restarts < 0) throw std::invalid_argument("restarts must be >= 0");

  const double ratio = params.ratio();
  const int estimate = ratio > 0.0 ? min_switches_estimate(ratio) : 0;
  const int cap = std::max(2, options.max_segments > 0 ? options.max_segments : 4 * estimate + 4);

  std::vector<SearchEntry> log;
  std::optional<StaircasePlan> overall;
  for (int segments = 2; segments <= cap; ++segments) {
    const auto greedy = greedy_staircase(params, segments);
    std::vector<std::optional<StaircasePlan>> restarts(static_cast<std::size_t>(options.restarts));
    detail::parallel_for(options.restarts, [&](int r) {
      const std::uint64_t seed =
          options.seed ^ splitmix(static_cast<std::uint64_t>(segments) * 1000003ULL + r);
      restarts[r] = refine_plan(
          params, make_plan(params, restart_seed(params, greedy, segments, r, seed)));
    });
    StaircasePlan best = greedy;
    for (const auto& p : restarts)
      if (p && better(*p, best)) best = *p;
    log.push_back({segments, best.achieved});
    if (!overall || better(best, *overall)) overall = best;
    if (best.achieved >= options.threshold) return {best, log, estimate, true};
  }
  throw SearchCapExceeded({*overall, log, estimate, false});
}

}  // namespace pcmod
