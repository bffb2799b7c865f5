#pragma once

#include <stdexcept>
#include <vector>

#include "pcmod/types.hpp"

namespace pcmod {

/// Raised when complete two-segment transfer is impossible for the requested
/// parameters (|delta| >= kappa0 for push-pull). Use the multistep planner instead.
class InfeasibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Segment 1 is (phase 0, t1), segment 2 is (phi, t2).
struct TwoStepSolution {
  double t1 = 0.0;
  double t2 = 0.0;
  double phi = 0.0;
  /// Final |a2|^2 starting from mode 1.
  double achieved = 0.0;
};

struct TwoStepOutcome {
  bool feasible = false;
  /// Complete-transfer schedule when feasible, otherwise the best partial one.
  TwoStepSolution solution;
};

Protocol to_protocol(const TwoStepSolution& solution);

/// Closed-form push-pull schedule (phi = pi):
///   Omega t1 = arctan(Omega / sqrt(kappa0^2 - delta^2)),  Omega t2 = pi - Omega t1.
/// Throws InfeasibleError when |delta| >= kappa0.
TwoStepSolution pushpull_times(const CouplerParams& params);

/// Two-segment schedule for relative phase `phi`.
///
/// Feasible case: intersect the precession circle through the North pole about
/// axis(0) with the circle through the South pole about axis(phi), then convert
/// the arcs to durations (earliest switch wins, ties to the shorter second arc).
/// Near tangency the result is polished by Newton iteration on the composite
/// (1,1) element.
///
/// Infeasible case: the largest reachable |a2|^2, from a 64 x 64 grid scan plus
/// multi-start simplex refinement.
TwoStepOutcome solve_two_step(const CouplerParams& params, double phi);

/// |a2|^2 after two segments over a grid of (Omega t1, Omega t2) in [0, pi]^2.
struct TransferMap {
  int n = 0;
  /// Grid axes in Omega t / pi.
  std::vector<double> t1_axis;
  std::vector<double> t2_axis;
  /// Row-major, row index along t1.
  std::vector<double> values;
  /// Maximum after local refinement from the best grid cell.
  double refined_peak = 0.0;
  double peak_t1 = 0.0;  ///< Omega t / pi
  double peak_t2 = 0.0;  ///< Omega t / pi

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
  double grid_max() const;
};

TransferMap transfer_map(const CouplerParams& params, double phi, int n);

/// two_step_feasible over (|delta|/kappa0 in [0, 1.2]) x (phi in [0, pi]).
struct FeasibilityMap {
  int n = 0;
  std::vector<double> ratios;
  std::vector<double> phases;
  /// Row-major, row index along ratio.
  std::vector<char> feasible;

  bool at(int i, int j) const { return feasible[static_cast<std::size_t>(i) * n + j] != 0; }
};

FeasibilityMap feasibility_map(int n, double max_ratio = 1.2);

/// Prefix of a full-transfer trajectory ending at its first crossing of the
/// target fraction.
struct FractionSchedule {
  std::vector<CouplingSegment> segments;
  double t_star = 0.0;
  double achieved = 0.0;
};

/// Truncates the two-step trajectory (or the static half-cycle when `phi` is
/// infeasible and p is below the static bound) at its first time with |a2|^2 = p.
FractionSchedule solve_fraction(const CouplerParams& params, double phi, double p);

}  // namespace pcmod
