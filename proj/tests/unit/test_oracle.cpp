#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pcmod/dynamics.hpp"
#include "pcmod/oracle.hpp"

using namespace pcmod;

namespace {

std::vector<CouplingSegment> random_protocol(std::mt19937_64& rng, const CouplerParams& p) {
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CouplingSegment> segs;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) segs.emplace_back(kTwoPi * u(rng), kPi * u(rng) / rabi_frequency(p));
  return segs;
}

}  // namespace

TEST(Generator, ResonantAndTraceless) {
  const auto h = oracle::generator(CouplerParams(0.0, 1.0), 0.0);
  EXPECT_EQ(h(0, 0), complex(0.0));
  EXPECT_EQ(h(0, 1), complex(1.0));
  EXPECT_EQ(h(1, 0), complex(1.0));
  EXPECT_EQ(h(1, 1), complex(0.0));
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const auto g = oracle::generator(CouplerParams(u(rng), std::abs(u(rng))), u(rng));
    EXPECT_EQ(g.trace(), complex(0.0));
    EXPECT_LT((g - g.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(ExpGenerator, MatchesClosedFormPropagator) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const CouplerParams p(6.0 * u(rng) - 3.0, 2.0 * u(rng) + 0.01);
    const CouplingSegment seg(kTwoPi * u(rng), 10.0 * u(rng));
    EXPECT_LE(oracle::max_entry_error(oracle::exp_generator(p, seg.phase(), seg.duration()),
                                      segment_propagator(p, seg)),
              1e-10);
  }
}

TEST(Integrate, ResonantQuarterPeriod) {
  const CouplerParams p(0.0, 1.0);
  const std::vector<CouplingSegment> segs{CouplingSegment(0.0, kPi / 2.0)};
  const auto end = oracle::integrate(p, segs, ModeState::mode1(), oracle::IntegrationConfig::defaults(p));
  EXPECT_NEAR(end.transferred(), 1.0, 1e-10);
}

TEST(Integrate, MatchesProtocolPropagator) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 30; ++i) {
    const CouplerParams p(u(rng), std::abs(u(rng)) + 0.1);
    const auto segs = random_protocol(rng, p);
    const auto ref = oracle::integrate_propagator(p, segs, oracle::IntegrationConfig::defaults(p));
    EXPECT_LE(oracle::max_entry_error(ref, protocol_propagator(p, segs)), 1e-8);
  }
}

TEST(Integrate, NormDriftSmallOverLongRuns) {
  const CouplerParams p(1.3, 0.7);
  const double omega = rabi_frequency(p);
  const std::vector<CouplingSegment> segs{CouplingSegment(0.0, 4.0 * kPi / omega),
                                          CouplingSegment(2.0, 6.0 * kPi / omega)};
  const auto end = oracle::integrate(p, segs, ModeState::mode1(), oracle::IntegrationConfig::defaults(p));
  EXPECT_LE(std::abs(end.norm_sq() - 1.0), 1e-10);
}

TEST(Integrate, DenseTrajectoryLandsOnBoundaries) {
  const CouplerParams p(0.5, 1.0);
  const std::vector<CouplingSegment> segs{CouplingSegment(0.0, 0.1234), CouplingSegment(1.0, 0.05)};
  std::vector<oracle::Sample> dense;
  auto cfg = oracle::IntegrationConfig::defaults(p);
  oracle::integrate(p, segs, ModeState::mode1(), cfg, &dense);
  ASSERT_FALSE(dense.empty());
  EXPECT_NEAR(dense.back().time, 0.1734, 1e-15);
  bool boundary = false;
  for (const auto& s : dense) boundary = boundary || std::abs(s.time - 0.1234) < 1e-15;
  EXPECT_TRUE(boundary);
}

TEST(Integrate, RejectsCoarseSteps) {
  const CouplerParams p(0.5, 1.0);
  const double omega = rabi_frequency(p);
  const std::vector<CouplingSegment> segs{CouplingSegment(0.0, 1.0)};
  EXPECT_THROW(oracle::integrate(p, segs, ModeState::mode1(), {0.02 / omega, true}), std::invalid_argument);
  EXPECT_NO_THROW(oracle::integrate(p, segs, ModeState::mode1(), {0.05 / omega, false}));
  EXPECT_THROW(oracle::integrate(p, segs, ModeState::mode1(), {0.2 / omega, false}), std::invalid_argument);
  EXPECT_THROW(oracle::integrate(p, segs, ModeState::mode1(), {0.0, false}), std::invalid_argument);
}

TEST(Integrate, FourthOrderConvergence) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const CouplerParams p(4.0 * u(rng) - 2.0, u(rng) + 0.2);
    const double h = 0.05 / rabi_frequency(p);
    std::vector<CouplingSegment> segs;
    for (int k = 0; k < 4; ++k) segs.emplace_back(kTwoPi * u(rng), h * std::round(20.0 + 40.0 * u(rng)));
    const auto exact = protocol_propagator(p, segs);
    const double e1 = oracle::max_entry_error(oracle::integrate_propagator(p, segs, {h, false}), exact);
    const double e2 = oracle::max_entry_error(oracle::integrate_propagator(p, segs, {h / 2.0, false}), exact);
    EXPECT_GE(e1 / e2, 12.0);
    EXPECT_LE(e1 / e2, 20.0);
  }
}

TEST(BruteForce, FindsCompleteTransferWhenFeasible) {
  const auto feasible = oracle::brute_force_two_step_max(CouplerParams(0.5, 1.0), kPi);
  EXPECT_GE(feasible.transferred, 1.0 - 1e-9);
  const auto infeasible = oracle::brute_force_two_step_max(CouplerParams(1.5, 1.0), kPi);
  EXPECT_LT(infeasible.transferred, 0.99);
  const std::vector<CouplingSegment> segs{CouplingSegment(0.0, infeasible.t1),
                                          CouplingSegment(kPi, infeasible.t2)};
  EXPECT_NEAR(protocol_propagator(CouplerParams(1.5, 1.0), segs).apply(ModeState::mode1()).transferred(),
              infeasible.transferred, 1e-12);
}
