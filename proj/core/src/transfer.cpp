#include "pcmod/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "parallel.hpp"
#include "pcmod/bloch.hpp"
#include "pcmod/dynamics.hpp"
#include "pcmod/optimize.hpp"

namespace pcmod {

namespace {

double wrap_half_turn(double x) {
  const double r = std::fmod(x, kPi);
  return r < 0.0 ? r + kPi : r;
}

TransferMatrix two_step_matrix(const CouplerParams& params, double phi, double t1, double t2) {
  return compose(segment_propagator(params, {phi, t2}), segment_propagator(params, {0.0, t1}));
}

TwoStepSolution make_solution(const CouplerParams& params, double phi, double t1, double t2) {
  return {t1, t2, phi, std::norm(two_step_matrix(params, phi, t1, t2).o)};
}

// Newton iteration (Levenberg damped) on Re D = Im D = 0 over (Omega t1, Omega t2).
TwoStepSolution polish(const CouplerParams& params, const TwoStepSolution& start) {
  const double omega = rabi_frequency(params);
  auto residual = [&](const Eigen::Vector2d& x) {
    const complex d = two_step_matrix(params, start.phi, x(0) / omega, x(1) / omega).d;
    return Eigen::Vector2d(d.real(), d.imag());
  };
  Eigen::Vector2d x(start.t1 * omega, start.t2 * omega);
  Eigen::Vector2d r = residual(x);
  double lambda = 1e-12;
  for (int iter = 0; iter < 100 && r.norm() > 1e-15; ++iter) {
    Eigen::Matrix2d jac;
    const double h = 1e-7;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d e = Eigen::Vector2d::Zero();
      e(k) = h;
      jac.col(k) = (residual(x + e) - residual(x - e)) / (2.0 * h);
    }
    const Eigen::Matrix2d normal = jac.transpose() * jac + lambda * Eigen::Matrix2d::Identity();
    const Eigen::Vector2d step = normal.ldlt().solve(-jac.transpose() * r);
    const Eigen::Vector2d candidate = x + step;
    const Eigen::Vector2d rc = residual(candidate);
    if (rc.norm() < r.norm()) {
      x = candidate;
      r = rc;
      lambda = std::max(lambda * 0.1, 1e-15);
    } else {
      lambda *= 10.0;
      if (lambda > 1e6) break;
    }
  }
  return make_solution(params, start.phi, wrap_half_turn(x(0)) / omega,
                       wrap_half_turn(x(1)) / omega);
}

// Grid scan plus multi-start simplex for the largest reachable |a2|^2.
TwoStepSolution best_partial(const CouplerParams& params, double phi) {
  const int grid = 64;
  const double omega = rabi_frequency(params);
  struct Cell {
    double value;
    int i, j;
  };
  std::vector<Cell> cells;
  cells.reserve(grid * grid);
  std::vector<TransferMatrix> second(grid);
  std::vector<ModeState> first(grid);
  for (int i = 0; i < grid; ++i) {
    const double t = kPi * i / grid / omega;
    first[i] = segment_propagator(params, {0.0, t}).apply(ModeState::mode1());
    second[i] = segment_propagator(params, {phi, t});
  }
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      cells.push_back({second[j].apply(first[i]).transferred(), i, j});
  std::partial_sort(cells.begin(), cells.begin() + 4, cells.end(),
                    [](const Cell& a, const Cell& b) { return a.value > b.value; });

  auto objective = [&](std::span<const double> x) {
    return -std::norm(
        two_step_matrix(params, phi, wrap_half_turn(x[0]) / omega, wrap_half_turn(x[1]) / omega).o);
  };
  NelderMeadOptions opt;
  opt.initial_step = kPi / grid;
  opt.max_evaluations = 3000;
  TwoStepSolution best = make_solution(params, phi, 0.0, 0.0);
  for (int k = 0; k < 4; ++k) {
    const auto r = nelder_mead(objective, {kPi * cells[k].i / grid, kPi * cells[k].j / grid}, opt);
    const auto sol =
        make_solution(params, phi, wrap_half_turn(r.x[0]) / omega, wrap_half_turn(r.x[1]) / omega);
    if (sol.achieved > best.achieved) best = sol;
  }
  return best;
}

// Geometric construction of the switch point.
TwoStepSolution geometric_solution(const CouplerParams& params, double phi) {
  const auto axis1 = rotation_axis(params, 0.0);
  const auto axis2 = rotation_axis(params, phi);
  const auto north = BlochVector::north();
  const auto south = BlochVector::south();
  const auto inter =
      circle_intersection(circle_through(axis1, north), circle_through(axis2, south));

  std::vector<BlochVector> switch_points;
  if (inter.kind == CircleIntersection::Kind::Coincident) {
    switch_points.push_back(south);
  } else {
    for (const auto& p : inter.points) switch_points.push_back(BlochVector::from(p));
  }
  if (switch_points.empty()) {
    // feasible within tolerance but numerically just outside tangency: closest approach
    return polish(params, best_partial(params, phi));
  }

  const double period = kPi / rabi_frequency(params);
  TwoStepSolution best;
  bool have = false;
  for (const auto& p : switch_points) {
    const double t1 = precession_time(axis1, north, p);
    const double t2 = precession_time(axis2, p, south);
    const bool earlier = !have || t1 < best.t1 - 1e-12 * period ||
                         (std::abs(t1 - best.t1) <= 1e-12 * period && t2 < best.t2);
    if (earlier) {
      best = make_solution(params, phi, t1, t2);
      have = true;
    }
  }
  return best;
}

}  // namespace

Protocol to_protocol(const TwoStepSolution& solution) {
  return Protocol({{0.0, solution.t1}, {solution.phi, solution.t2}});
}

TwoStepSolution pushpull_times(const CouplerParams& params) {
  const double kappa = params.kappa0();
  const double delta = params.delta();
  if (!(std::abs(delta) < kappa))
    throw InfeasibleError(
        "push-pull transfer needs |delta| < kappa0; use the multistep planner for larger detuning");
  const double omega = rabi_frequency(params);
  const double first = std::atan(omega / std::sqrt(kappa * kappa - delta * delta));
  return make_solution(params, kPi, first / omega, (kPi - first) / omega);
}

TwoStepOutcome solve_two_step(const CouplerParams& params, double phi) {
  if (!(params.kappa0() > 0.0)) throw std::invalid_argument("solve_two_step needs kappa0 > 0");
  phi = reduce_phase(phi);
  if (!two_step_feasible(params, phi)) return {false, best_partial(params, phi)};

  TwoStepSolution sol = geometric_solution(params, phi);
  const double d_mag = std::sqrt(std::max(0.0, 1.0 - sol.achieved));
  if (d_mag > 1e-12) {
    const auto polished = polish(params, sol);
    if (polished.achieved > sol.achieved) sol = polished;
  }
  return {true, sol};
}

double TransferMap::grid_max() const { return *std::max_element(values.begin(), values.end()); }

TransferMap transfer_map(const CouplerParams& params, double phi, int n) {
  if (n < 16) throw std::invalid_argument("transfer map grid must be >= 16");
  TransferMap map;
  map.n = n;
  map.t1_axis.resize(n);
  for (int i = 0; i < n; ++i) map.t1_axis[i] = static_cast<double>(i) / (n - 1);
  map.t2_axis = map.t1_axis;
  map.values.assign(static_cast<std::size_t>(n) * n, 0.0);

  std::vector<ModeState> first(n);
  std::vector<TransferMatrix> second(n);
  for (int i = 0; i < n; ++i) {
    const double t = time_from_omega_t_over_pi(params, map.t1_axis[i]);
    first[i] = segment_propagator(params, {0.0, t}).apply(ModeState::mode1());
    second[i] = segment_propagator(params, {phi, t});
  }
  detail::parallel_for(n, [&](int i) {
    for (int j = 0; j < n; ++j)
      map.values[static_cast<std::size_t>(i) * n + j] = second[j].apply(first[i]).transferred();
  });

  const auto best = std::max_element(map.values.begin(), map.values.end());
  const auto idx = static_cast<int>(best - map.values.begin());
  const double omega = rabi_frequency(params);
  auto objective = [&](std::span<const double> x) {
    return -std::norm(
        two_step_matrix(params, phi, wrap_half_turn(x[0]) / omega, wrap_half_turn(x[1]) / omega).o);
  };
  NelderMeadOptions opt;
  opt.initial_step = kPi / (n - 1);
  opt.max_evaluations = 3000;
  const auto r = nelder_mead(objective, {kPi * map.t1_axis[idx / n], kPi * map.t2_axis[idx % n]}, opt);
  if (-r.value > *best) {
    map.refined_peak = -r.value;
    map.peak_t1 = wrap_half_turn(r.x[0]) / kPi;
    map.peak_t2 = wrap_half_turn(r.x[1]) / kPi;
  } else {
    map.refined_peak = *best;
    map.peak_t1 = map.t1_axis[idx / n];
    map.peak_t2 = map.t2_axis[idx % n];
  }
  return map;
}

FeasibilityMap feasibility_map(int n, double max_ratio) {
  if (n < 16) throw std::invalid_argument("feasibility map grid must be >= 16");
  if (!(max_ratio > 0.0)) throw std::invalid_argument("max_ratio must be positive");
  FeasibilityMap map;
  map.n = n;
  map.ratios.resize(n);
  map.phases.resize(n);
  for (int i = 0; i < n; ++i) {
    map.ratios[i] = max_ratio * i / (n - 1);
    map.phases[i] = kPi * i / (n - 1);
  }
  map.feasible.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    const CouplerParams params(map.ratios[i], 1.0);
    for (int j = 0; j < n; ++j)
      map.feasible[static_cast<std::size_t>(i) * n + j] = two_step_feasible(params, map.phases[j]);
  }
  return map;
}

FractionSchedule solve_fraction(const CouplerParams& params, double phi, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("target fraction must lie in [0, 1]");
  if (!(params.kappa0() > 0.0)) throw std::invalid_argument("solve_fraction needs kappa0 > 0");
  if (p == 0.0) return {{}, 0.0, 0.0};

  std::vector<CouplingSegment> full;
  if (two_step_feasible(params, phi)) {
    const auto sol = solve_two_step(params, phi).solution;
    full = {{0.0, sol.t1}, {sol.phi, sol.t2}};
  } else if (p <= static_max_transfer(params) + 1e-12) {
    full = {{0.0, kPi / (2.0 * rabi_frequency(params))}};
  } else {
    throw std::invalid_argument(
        "target fraction exceeds the static bound and the phase does not allow complete transfer");
  }

  double total = 0.0;
  for (const auto& s : full) total += s.duration();
  if (p >= 1.0 - 1e-15) {
    return {full, total, protocol_propagator(params, full).apply(ModeState::mode1()).transferred()};
  }

  auto truncate = [&](double t) {
    std::vector<CouplingSegment> out;
    double left = t;
    for (const auto& s : full) {
      if (left <= 0.0) break;
      const double d = std::min(left, s.duration());
      out.emplace_back(s.phase(), d);
      left -= d;
    }
    return out;
  };
  auto fraction_at = [&](double t) {
    const auto segs = truncate(t);
    if (segs.empty()) return 0.0;
    return protocol_propagator(params, segs).apply(ModeState::mode1()).transferred();
  };

  const int samples = 4096;
  double lo = 0.0;
  double hi = -1.0;
  for (int k = 1; k <= samples; ++k) {
    const double t = total * k / samples;
    if (fraction_at(t) >= p) {
      hi = t;
      break;
    }
    lo = t;
  }
  if (hi < 0.0) throw std::runtime_error("trajectory never reaches the target fraction");
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * total; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (fraction_at(mid) >= p) hi = mid;
    else lo = mid;
  }
  // whichever bracket end sits closer to the target
  const double t_star = std::abs(fraction_at(lo) - p) < std::abs(fraction_at(hi) - p) ? lo : hi;
  return {truncate(t_star), t_star, fraction_at(t_star)};
}

}  // namespace pcmod
