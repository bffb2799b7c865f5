#include <cmath>

#include <gtest/gtest.h>

#include "pcmod/optimize.hpp"
#include "pcmod/types.hpp"

using namespace pcmod;

TEST(NelderMead, Rosenbrock) {
  const Objective f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const auto r = nelder_mead(f, {-1.2, 1.0}, {.initial_step = 0.5});
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
  EXPECT_LT(r.value, 1e-12);
}

TEST(NelderMead, OneDimensionAndHigherDimension) {
  const auto one = nelder_mead([](std::span<const double> x) { return std::pow(x[0] - 3.0, 2); }, {0.0});
  EXPECT_NEAR(one.x[0], 3.0, 1e-6);

  const Objective sphere = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * std::pow(x[i] - 0.5, 2);
    return s;
  };
  const auto r = nelder_mead(sphere, std::vector<double>(8, 0.0), {.max_evaluations = 50000});
  for (double v : r.x) EXPECT_NEAR(v, 0.5, 1e-5);
}

TEST(NelderMead, RespectsEvaluationBudget) {
  int calls = 0;
  const Objective f = [&](std::span<const double> x) {
    ++calls;
    return x[0] * x[0] + x[1] * x[1];
  };
  const auto r = nelder_mead(f, {5.0, 5.0}, {.max_evaluations = 40, .restarts = 0});
  EXPECT_LE(r.evaluations, 45);
  EXPECT_EQ(r.evaluations, calls);
}

TEST(GoldenSection, FindsMaximum) {
  EXPECT_NEAR(golden_section_max([](double x) { return std::sin(x); }, 0.0, 3.0), kPi / 2.0, 1e-7);
  EXPECT_NEAR(golden_section_max([](double x) { return -(x - 0.25) * (x - 0.25); }, -1.0, 1.0), 0.25, 1e-7);
}
