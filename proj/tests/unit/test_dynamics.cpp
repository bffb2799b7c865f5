#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pcmod/dynamics.hpp"
#include "pcmod/oracle.hpp"

using namespace pcmod;

namespace {

double entry_gap(const TransferMatrix& a, const TransferMatrix& b) {
  return std::max(std::abs(a.d - b.d), std::abs(a.o - b.o));
}

std::vector<CouplingSegment> random_protocol(std::mt19937_64& rng, const CouplerParams& p, int max_segments) {
  std::uniform_int_distribution<int> count(1, max_segments);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::uniform_real_distribution<double> omega_t(0.0, kPi);
  std::vector<CouplingSegment> segs;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) segs.emplace_back(phase(rng), omega_t(rng) / rabi_frequency(p));
  return segs;
}

}  // namespace

TEST(CouplerParams, RejectsInvalidValues) {
  EXPECT_THROW(CouplerParams(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(CouplerParams(0.5, -1.0), std::invalid_argument);
  EXPECT_THROW(CouplerParams(std::nan(""), 1.0), std::invalid_argument);
  EXPECT_THROW(CouplerParams(0.5, INFINITY), std::invalid_argument);
  EXPECT_NO_THROW(CouplerParams(-2.0, 1.0));
  EXPECT_NO_THROW(CouplerParams(1.0, 0.0));
  EXPECT_DOUBLE_EQ(CouplerParams(-2.0, 1.0).ratio(), 2.0);
}

TEST(CouplingSegment, ReducesPhaseAndRejectsNegativeDuration) {
  EXPECT_NEAR(CouplingSegment(-kPi / 2.0, 1.0).phase(), 1.5 * kPi, 1e-15);
  EXPECT_NEAR(CouplingSegment(5.0 * kPi, 1.0).phase(), kPi, 1e-14);
  EXPECT_THROW(CouplingSegment(0.0, -1e-3), std::invalid_argument);
}

TEST(Protocol, RejectsEmptyAndZeroLength) {
  EXPECT_THROW(Protocol({}), std::invalid_argument);
  EXPECT_THROW(Protocol({CouplingSegment(0.0, 0.0)}), std::invalid_argument);
  const Protocol p({CouplingSegment(0.0, 1.0), CouplingSegment(kPi, 2.0)});
  EXPECT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p.total_duration(), 3.0);
}

TEST(RabiFrequency, Examples) {
  EXPECT_DOUBLE_EQ(rabi_frequency(CouplerParams(0.0, 1.0)), 1.0);
  EXPECT_NEAR(rabi_frequency(CouplerParams(0.5, 1.0)), 1.1180339887, 1e-10);
  EXPECT_NEAR(rabi_frequency(CouplerParams(2.0, 1.0)), std::sqrt(5.0), 1e-15);
}

TEST(OmegaTime, RoundTrip) {
  const CouplerParams p(0.5, 1.0);
  EXPECT_NEAR(omega_t_over_pi(p, time_from_omega_t_over_pi(p, 0.29)), 0.29, 1e-15);
}

TEST(SegmentPropagator, ResonantQuarterPeriodTransfersFully) {
  const auto m = segment_propagator(CouplerParams(0.0, 1.0), CouplingSegment(0.0, kPi / 2.0));
  EXPECT_NEAR(std::abs(m.d), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.o), 1.0, 1e-15);
}

TEST(SegmentPropagator, ZeroDurationIsIdentity) {
  const auto m = segment_propagator(CouplerParams(0.7, 1.3), CouplingSegment(2.0, 0.0));
  EXPECT_EQ(m.d, complex(1.0, 0.0));
  EXPECT_EQ(m.o, complex(0.0, 0.0));
}

TEST(SegmentPropagator, DetunedOffDiagonalMatchesExponential) {
  const CouplerParams p(0.5, 1.0);
  const double t = time_from_omega_t_over_pi(p, 0.29);
  const auto m = segment_propagator(p, CouplingSegment(0.0, t));
  EXPECT_NEAR(std::norm(m.o), 0.8 * std::pow(std::sin(0.29 * kPi), 2), 1e-14);
  EXPECT_NEAR(std::norm(m.o), 0.4995, 5e-5);
  const auto ref = oracle::exp_generator(p, 0.0, t);
  EXPECT_LT(oracle::max_entry_error(ref, m), 1e-12);
}

TEST(SegmentPropagator, UnitaryForRandomInputs) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 2000; ++i) {
    const CouplerParams p(u(rng), std::abs(u(rng)) + 0.01);
    const auto m = segment_propagator(p, CouplingSegment(u(rng), std::abs(u(rng)) * 3.0));
    EXPECT_LE(std::abs(m.unitarity_defect()), 1e-12);
  }
}

TEST(Compose, IdentityLaw) {
  const auto m = segment_propagator(CouplerParams(0.3, 1.0), CouplingSegment(1.0, 0.7));
  EXPECT_LT(entry_gap(compose(TransferMatrix::identity(), m), m), 1e-15);
  EXPECT_LT(entry_gap(compose(m, TransferMatrix::identity()), m), 1e-15);
}

TEST(Compose, ResonantAnglesAdd) {
  const CouplerParams p(0.0, 1.0);
  const auto half = segment_propagator(p, CouplingSegment(0.0, kPi / 4.0));
  const auto m = compose(half, half);
  EXPECT_NEAR(std::abs(m.d), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.o), 1.0, 1e-15);
}

TEST(Compose, MatchesDenseProductAndIsAssociative) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const CouplerParams p(u(rng) - 1.5, u(rng) + 0.1);
    const CouplingSegment s1(u(rng), u(rng)), s2(u(rng), u(rng)), s3(u(rng), u(rng));
    const auto a = segment_propagator(p, s1), b = segment_propagator(p, s2), c = segment_propagator(p, s3);
    const auto dense = oracle::exp_generator(p, s2.phase(), s2.duration()) *
                       oracle::exp_generator(p, s1.phase(), s1.duration());
    EXPECT_LT(oracle::max_entry_error(dense, compose(b, a)), 1e-12);
    EXPECT_LT(entry_gap(compose(c, compose(b, a)), compose(compose(c, b), a)), 1e-14);
  }
}

TEST(Compose, SemigroupWithinSegment) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const CouplerParams p(u(rng) - 2.0, u(rng) + 0.05);
    const double phase = u(rng), t1 = u(rng), t2 = u(rng);
    const auto whole = segment_propagator(p, CouplingSegment(phase, t1 + t2));
    const auto parts = compose(segment_propagator(p, CouplingSegment(phase, t2)),
                               segment_propagator(p, CouplingSegment(phase, t1)));
    EXPECT_LT(entry_gap(whole, parts), 1e-12);
  }
}

TEST(ProtocolPropagator, SingleSegmentAndEmpty) {
  const CouplerParams p(0.4, 1.0);
  const CouplingSegment seg(0.3, 1.1);
  const std::vector<CouplingSegment> one{seg};
  EXPECT_LT(entry_gap(protocol_propagator(p, one), segment_propagator(p, seg)), 1e-15);
  EXPECT_THROW(protocol_propagator(p, std::span<const CouplingSegment>{}), std::invalid_argument);
}

TEST(ProtocolPropagator, OrderIsLastLeftmost) {
  const CouplerParams p(0.5, 1.0);
  const CouplingSegment a(0.0, 0.4), b(kPi / 2.0, 0.9);
  const std::vector<CouplingSegment> segs{a, b};
  const auto expected = compose(segment_propagator(p, b), segment_propagator(p, a));
  EXPECT_LT(entry_gap(protocol_propagator(p, segs), expected), 1e-15);
}

TEST(ProtocolPropagator, PushPullScheduleTransfersFullyPerOracle) {
  // Closed-form push-pull durations at delta/kappa0 = 0.5, written out here.
  const CouplerParams p(0.5, 1.0);
  const double omega = rabi_frequency(p);
  const double wt1 = std::atan(omega / std::sqrt(1.0 - 0.25));
  const std::vector<CouplingSegment> segs{CouplingSegment(0.0, wt1 / omega),
                                          CouplingSegment(kPi, (kPi - wt1) / omega)};
  const auto m = protocol_propagator(p, segs);
  EXPECT_NEAR(std::norm(m.o), 1.0, 1e-9);
  const auto end = oracle::integrate(p, segs, ModeState::mode1(), oracle::IntegrationConfig::defaults(p));
  EXPECT_NEAR(end.transferred(), 1.0, 1e-9);
}

TEST(ProtocolPropagator, UnitaryForRandomProtocols) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const CouplerParams p(u(rng), std::abs(u(rng)) + 0.1);
    const auto segs = random_protocol(rng, p, 8);
    EXPECT_LE(std::abs(protocol_propagator(p, segs).unitarity_defect()), 1e-12);
  }
}

TEST(Propagate, ResonantQuarterPeriod) {
  const CouplerParams p(0.0, 1.0);
  const std::vector<CouplingSegment> segs{CouplingSegment(0.0, kPi / 2.0)};
  const auto traj = propagate(p, segs, ModeState::mode1(), 11);
  ASSERT_EQ(traj.size(), 11u);
  EXPECT_EQ(traj.front().time, 0.0);
  EXPECT_EQ(traj.front().state.a1, complex(1.0, 0.0));
  EXPECT_NEAR(traj.back().time, kPi / 2.0, 1e-15);
  EXPECT_NEAR(traj.back().state.transferred(), 1.0, 1e-15);
}

TEST(Propagate, EndpointsAreExact) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const CouplerParams p(u(rng), std::abs(u(rng)) + 0.1);
    const auto segs = random_protocol(rng, p, 6);
    const ModeState init{{0.6, 0.0}, {0.0, 0.8}};
    const auto traj = propagate(p, segs, init, 37);
    EXPECT_EQ(traj.front().state.a1, init.a1);
    EXPECT_EQ(traj.front().state.a2, init.a2);
    const auto end = protocol_propagator(p, segs).apply(init);
    EXPECT_LT(std::abs(traj.back().state.a1 - end.a1), 1e-15);
    EXPECT_LT(std::abs(traj.back().state.a2 - end.a2), 1e-15);
  }
}

TEST(Propagate, ZeroDurationSegmentChangesNothing) {
  const CouplerParams p(0.5, 1.0);
  const std::vector<CouplingSegment> one{CouplingSegment(0.0, 1.3)};
  const std::vector<CouplingSegment> two{CouplingSegment(0.0, 1.3), CouplingSegment(kPi, 0.0)};
  const auto a = propagate(p, one, ModeState::mode1(), 64);
  const auto b = propagate(p, two, ModeState::mode1(), 64);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].time, b[i].time);
    EXPECT_LT(std::abs(a[i].state.a1 - b[i].state.a1), 1e-15);
    EXPECT_LT(std::abs(a[i].state.a2 - b[i].state.a2), 1e-15);
  }
}

TEST(Propagate, NormConserved) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const CouplerParams p(u(rng), std::abs(u(rng)) + 0.1);
    const auto segs = random_protocol(rng, p, 8);
    for (const auto& s : propagate(p, segs, ModeState::mode1(), 100))
      EXPECT_LE(std::abs(s.state.norm_sq() - 1.0), 1e-12);
  }
}

TEST(Propagate, RejectsBadArguments) {
  const CouplerParams p(0.5, 1.0);
  const std::vector<CouplingSegment> segs{CouplingSegment(0.0, 1.0)};
  EXPECT_THROW(propagate(p, segs, ModeState::mode1(), 1), std::invalid_argument);
  EXPECT_THROW(propagate(p, std::span<const CouplingSegment>{}, ModeState::mode1(), 10),
               std::invalid_argument);
}

TEST(StaticMaxTransfer, Examples) {
  EXPECT_DOUBLE_EQ(static_max_transfer(CouplerParams(0.0, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(static_max_transfer(CouplerParams(1.0, 1.0)), 0.5);
  EXPECT_NEAR(static_max_transfer(CouplerParams(0.5, 1.0)), 0.8, 1e-15);
}

TEST(StaticMaxTransfer, BoundsDenseGridAndIsAttained) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-5.0, 5.0), k(0.05, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const CouplerParams p(d(rng), k(rng));
    const double bound = static_max_transfer(p);
    double best = 0.0;
    for (int j = 0; j <= 400; ++j) {
      const double t = time_from_omega_t_over_pi(p, j / 400.0);
      best = std::max(best, std::norm(segment_propagator(p, CouplingSegment(0.0, t)).o));
    }
    EXPECT_LE(best, bound + 1e-9);
    EXPECT_NEAR(best, bound, 1e-12);  // j = 200 is Omega t = pi/2
  }
}
