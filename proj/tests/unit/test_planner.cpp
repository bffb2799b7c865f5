#include <cmath>

#include <gtest/gtest.h>

#include "pcmod/dynamics.hpp"
#include "pcmod/oracle.hpp"
#include "pcmod/planner.hpp"
#include "pcmod/transfer.hpp"

using namespace pcmod;

namespace {

/// Lowest w reached within each segment, from a dense amplitude-space sampling.
std::vector<double> segment_minima(const CouplerParams& p, const Protocol& protocol) {
  std::vector<double> minima;
  ModeState s = ModeState::mode1();
  for (const auto& seg : protocol.segments()) {
    const std::vector<CouplingSegment> one{seg};
    double lowest = 2.0;
    const auto traj = propagate(p, one, s, 400);
    for (const auto& x : traj) lowest = std::min(lowest, to_bloch(x.state).w);
    minima.push_back(lowest);
    s = traj.back().state;
  }
  return minima;
}

}  // namespace

TEST(MinSwitchesEstimate, Examples) {
  EXPECT_EQ(min_switches_estimate(1.0), 1);
  EXPECT_EQ(min_switches_estimate(2.0), 2);
  EXPECT_EQ(min_switches_estimate(10.0), 8);
  EXPECT_THROW(min_switches_estimate(0.0), std::invalid_argument);
  EXPECT_THROW(min_switches_estimate(-1.0), std::invalid_argument);
}

TEST(MinSwitchesEstimate, LargeRatioLimit) {
  // pi / (4 arctan(1/r)) = pi r / 4 + pi / (12 r) + O(r^-3)
  for (double r = 4.0; r <= 40.0; r += 0.25) {
    const double excess = min_switches_estimate(r) - kPi * r / 4.0;
    EXPECT_GE(excess, 0.0) << r;
    EXPECT_LT(excess, 1.0 + kPi / (12.0 * r)) << r;
  }
}

TEST(RecursiveIntersection, TwoStepGeometry) {
  auto pair = [](double ratio) {
    const CouplerParams p(ratio, 1.0);
    return std::vector<SphericalCircle>{circle_through(rotation_axis(p, 0.0), BlochVector::north()),
                                        circle_through(rotation_axis(p, kPi), BlochVector::south())};
  };
  EXPECT_TRUE(recursive_intersection_ok(pair(0.5)));
  EXPECT_FALSE(recursive_intersection_ok(pair(1.5)));
  const SphericalCircle c{Vec3(0.3, 0.4, 0.5).normalized(), 1.0};
  const std::vector<SphericalCircle> same{c, c};
  EXPECT_TRUE(recursive_intersection_ok(same));
  const std::vector<SphericalCircle> one{c};
  EXPECT_THROW(recursive_intersection_ok(one), std::invalid_argument);
}

TEST(MakePlan, CountsAndSwitchPoints) {
  const CouplerParams p(0.5, 1.0);
  const auto plan = make_plan(p, to_protocol(pushpull_times(p)));
  EXPECT_EQ(plan.segments(), 2);
  EXPECT_EQ(plan.switches, 1);
  ASSERT_EQ(plan.switch_points.size(), 1u);
  EXPECT_NEAR(plan.achieved, 1.0, 1e-12);
  EXPECT_NEAR(plan.residual, 1.0 - plan.achieved, 1e-15);
  EXPECT_NEAR(plan.switch_points[0].w, 0.0, 1e-12);  // the first push-pull arc ends on the equator
}

TEST(GreedyStaircase, ResonantIsSingleSegment) {
  const auto plan = greedy_staircase(CouplerParams(0.0, 1.0), 5);
  EXPECT_EQ(plan.segments(), 1);
  EXPECT_EQ(plan.switches, 0);
  EXPECT_NEAR(plan.achieved, 1.0, 1e-12);
}

TEST(GreedyStaircase, ReproducesTwoStepAtHalfDetuning) {
  const auto plan = greedy_staircase(CouplerParams(0.5, 1.0), 2);
  EXPECT_EQ(plan.segments(), 2);
  EXPECT_NEAR(plan.achieved, 1.0, 1e-6);
}

TEST(GreedyStaircase, LargeDetuningReachesThreshold) {
  const CouplerParams p(2.0, 1.0);
  const auto plan = greedy_staircase(p, 8);
  EXPECT_GE(plan.achieved, 0.99);
  EXPECT_TRUE(recursive_intersection_ok(precession_circles(p, plan.protocol), 1e-8));
}

TEST(GreedyStaircase, RunningMinimumDescends) {
  for (double ratio : {1.5, 2.0, 3.0, 4.5}) {
    const CouplerParams p(ratio, 1.0);
    const auto plan = greedy_staircase(p, 12);
    const auto minima = segment_minima(p, plan.protocol);
    double running = 1.0;
    for (double m : minima) {
      EXPECT_LT(m, running) << "ratio " << ratio;
      running = std::min(running, m);
    }
  }
}

TEST(GreedyStaircase, RejectsBadArguments) {
  EXPECT_THROW(greedy_staircase(CouplerParams(1.0, 0.0), 4), std::invalid_argument);
  EXPECT_THROW(greedy_staircase(CouplerParams(1.0, 1.0), 1), std::invalid_argument);
}

TEST(RefinePlan, ExactPlanIsFixedPoint) {
  const CouplerParams p(0.5, 1.0);
  const auto exact = make_plan(p, to_protocol(pushpull_times(p)));
  const auto refined = refine_plan(p, exact);
  EXPECT_NEAR(refined.achieved, exact.achieved, 1e-9);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(refined.protocol.segments()[i].duration(), exact.protocol.segments()[i].duration(), 1e-9);
    EXPECT_NEAR(refined.protocol.segments()[i].phase(), exact.protocol.segments()[i].phase(), 1e-9);
  }
}

TEST(RefinePlan, RestoresPerturbedPlan) {
  const CouplerParams p(2.0, 1.0);
  const auto exact = minimal_plan_search(p).plan;
  ASSERT_GE(exact.achieved, 1.0 - 1e-8);
  std::vector<CouplingSegment> segs;
  int k = 0;
  for (const auto& s : exact.protocol.segments())
    segs.emplace_back(s.phase(), s.duration() * (k++ % 2 ? 0.99 : 1.01));
  const auto perturbed = make_plan(p, Protocol(segs));
  ASSERT_LT(perturbed.achieved, 1.0 - 1e-6);
  const auto restored = refine_plan(p, perturbed);
  EXPECT_GE(restored.achieved, 1.0 - 1e-8);
}

TEST(RefinePlan, NeverWorse) {
  const CouplerParams p(3.0, 1.0);
  const auto plan = make_plan(p, Protocol({CouplingSegment(0.0, 0.3), CouplingSegment(2.0, 0.7),
                                           CouplingSegment(4.0, 0.2)}));
  EXPECT_GE(refine_plan(p, plan).achieved, plan.achieved);
}

TEST(MinimalPlanSearch, TwoSegmentsUpToUnitRatio) {
  for (double ratio : {0.0, 0.3, 0.5, 0.8, 0.95}) {
    const CouplerParams p(ratio, 1.0);
    const auto result = minimal_plan_search(p);
    EXPECT_TRUE(result.found);
    EXPECT_LE(result.plan.segments(), 2) << ratio;
    if (ratio > 0.0) {
      EXPECT_NEAR(result.plan.achieved, pushpull_times(p).achieved, 1e-9);
    }
  }
  const auto unit = minimal_plan_search(CouplerParams(1.0, 1.0));
  EXPECT_EQ(unit.plan.segments(), 2);
  EXPECT_GE(unit.plan.achieved, 0.99);
}

TEST(MinimalPlanSearch, LargeDetuningPlanIsConsistent) {
  const CouplerParams p(2.0, 1.0);
  const auto result = minimal_plan_search(p);
  ASSERT_TRUE(result.found);
  const auto& plan = result.plan;
  EXPECT_GE(plan.achieved, 0.99);
  EXPECT_LE(plan.achieved, 1.0 + 1e-12);
  EXPECT_EQ(plan.switches, plan.segments() - 1);
  EXPECT_EQ(static_cast<int>(plan.switch_points.size()), plan.switches);
  EXPECT_EQ(result.estimate, 2);
  EXPECT_EQ(result.log.back().segments, plan.segments());
  EXPECT_TRUE(recursive_intersection_ok(precession_circles(p, plan.protocol), 1e-8));
  const auto rk4 = oracle::integrate(p, plan.protocol.segments(), ModeState::mode1(),
                                     oracle::IntegrationConfig::defaults(p));
  EXPECT_NEAR(rk4.transferred(), plan.achieved, 1e-8);
}

TEST(MinimalPlanSearch, SwitchCountNondecreasing) {
  int previous = 0;
  for (double ratio = 1.0; ratio <= 4.01; ratio += 0.5) {
    const auto result = minimal_plan_search(CouplerParams(ratio, 1.0));
    ASSERT_TRUE(result.found);
    EXPECT_GE(result.plan.switches, previous) << ratio;
    previous = result.plan.switches;
  }
}

TEST(MinimalPlanSearch, DeterministicForSeed) {
  const CouplerParams p(2.5, 1.0);
  SearchOptions opt;
  opt.seed = 42;
  const auto a = minimal_plan_search(p, opt);
  const auto b = minimal_plan_search(p, opt);
  ASSERT_EQ(a.plan.segments(), b.plan.segments());
  for (int i = 0; i < a.plan.segments(); ++i) {
    EXPECT_EQ(a.plan.protocol.segments()[i].duration(), b.plan.protocol.segments()[i].duration());
    EXPECT_EQ(a.plan.protocol.segments()[i].phase(), b.plan.protocol.segments()[i].phase());
  }
}

TEST(MinimalPlanSearch, CapExceededCarriesBestPlan) {
  SearchOptions opt;
  opt.max_segments = 3;
  try {
    minimal_plan_search(CouplerParams(3.0, 1.0), opt);
    FAIL() << "expected SearchCapExceeded";
  } catch (const SearchCapExceeded& e) {
    EXPECT_FALSE(e.best().found);
    EXPECT_LE(e.best().plan.segments(), 3);
    EXPECT_GT(e.best().plan.achieved, 0.5);
    EXPECT_EQ(e.best().log.size(), 2u);
  }
}
