#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pcmod/bloch.hpp"
#include "pcmod/types.hpp"

namespace pcmod {

/// Multi-segment schedule for complete transfer at large detuning.
///
/// Switch counting: `switches` is the number of switching events, always
/// segments - 1. Every exported count follows this convention.
struct StaircasePlan {
  Protocol protocol;
  /// Bloch state at each switching event, in order (switches entries).
  std::vector<BlochVector> switch_points;
  double achieved = 0.0;
  int switches = 0;
  double residual = 1.0;

  int segments() const { return static_cast<int>(protocol.size()); }
};

/// Evaluates a protocol from mode 1: switch points, achieved |a2|^2, residual.
StaircasePlan make_plan(const CouplerParams& params, Protocol protocol);

/// The precession circle traced by each segment of `protocol` from mode 1.
std::vector<SphericalCircle> precession_circles(const CouplerParams& params,
                                                const Protocol& protocol);

/// ceil(pi / (4 arctan(1 / ratio))) for ratio = |delta|/kappa0 > 0.
int min_switches_estimate(double ratio);

/// Adjacent circles satisfy |r_{i+1} - r_i| <= d_i <= r_i + r_{i+1}
/// (d_i the angle between centers), each within `tolerance`.
bool recursive_intersection_ok(std::span<const SphericalCircle> circles,
                               double tolerance = kAngleTol);

/// Builds a staircase one segment at a time.
///
/// On each circle, 256 candidate switch states are scanned. As soon as a
/// candidate sits at polar angle >= 2|psi| the circle about some axis through it
/// also passes through the South pole; the earliest such state is located by
/// bisection and the next segment is the final one. Otherwise the switch goes
/// to the candidate whose best next circle (phase searched continuously over
/// [0, 2pi)) reaches deepest toward the South pole. The last allowed segment
/// stops at its closest approach to the South pole. The result goes through
/// refine_plan.
///
/// Throws std::invalid_argument if kappa0 == 0 or max_segments < 2.
StaircasePlan greedy_staircase(const CouplerParams& params, int max_segments);

/// Simplex refinement of all durations and phases against 1 - |a2|^2.
/// Never returns a plan with lower `achieved` than its input.
StaircasePlan refine_plan(const CouplerParams& params, const StaircasePlan& plan);

struct SearchOptions {
  double threshold = 0.99;
  int restarts = 8;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Segment cap; 0 selects 4 * min_switches_estimate + 4.
  int max_segments = 0;
};

struct SearchEntry {
  int segments = 0;
  double achieved = 0.0;
};

struct SearchResult {
  StaircasePlan plan;
  std::vector<SearchEntry> log;
  /// min_switches_estimate(ratio), 0 when delta == 0.
  int estimate = 0;
  bool found = false;
};

class SearchCapExceeded : public std::runtime_error {
public:
  explicit SearchCapExceeded(SearchResult best);
  const SearchResult& best() const { return best_; }

private:
  SearchResult best_;
};

/// Smallest segment count (from 2 upward) whose best plan reaches `threshold`.
/// Each count runs greedy_staircase plus `restarts` seeded random restarts
/// through refine_plan; ties go to fewer segments, then shorter total duration.
/// Throws SearchCapExceeded carrying the best plan seen.
SearchResult minimal_plan_search(const CouplerParams& params, const SearchOptions& options = {});

}  // namespace pcmod
