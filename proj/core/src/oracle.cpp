#include "pcmod/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "pcmod/optimize.hpp"

namespace pcmod::oracle {

namespace {

double omega_of(const CouplerParams& params) { return std::hypot(params.delta(), params.kappa0()); }

void validate(const CouplerParams& params, const IntegrationConfig& config) {
  if (!(config.step > 0.0) || !std::isfinite(config.step))
    throw std::invalid_argument("integration step must be positive");
  const double scaled = config.step * omega_of(params);
  if (scaled > 0.1) throw std::invalid_argument("integration step too large: step * Omega > 0.1");
  if (config.enforce_fine_step && scaled > 0.01 * (1.0 + 1e-12))
    throw std::invalid_argument("integration step exceeds the default bound step * Omega <= 0.01");
}

using Vec2c = Eigen::Vector2cd;

}  // namespace

IntegrationConfig IntegrationConfig::defaults(const CouplerParams& params) {
  return {1e-3 / omega_of(params), true};
}

Matrix2c generator(const CouplerParams& params, double phase) {
  const complex kappa = std::polar(params.kappa0(), phase);
  Matrix2c h;
  h << params.delta(), kappa, std::conj(kappa), -params.delta();
  return h;
}

Matrix2c exp_generator(const CouplerParams& params, double phase, double t) {
  const Matrix2c a = complex(0.0, -t) * generator(params, phase);
  return a.exp();
}

Matrix2c exp_propagator(const CouplerParams& params, std::span<const CouplingSegment> segments) {
  Matrix2c total = Matrix2c::Identity();
  for (const auto& seg : segments)
    total = exp_generator(params, seg.phase(), seg.duration()) * total;
  return total;
}

ModeState integrate(const CouplerParams& params, std::span<const CouplingSegment> segments,
                    const ModeState& initial, const IntegrationConfig& config,
                    std::vector<Sample>* dense) {
  validate(params, config);
  Vec2c a(initial.a1, initial.a2);
  double t = 0.0;
  if (dense) dense->push_back({t, initial});
  for (const auto& seg : segments) {
    if (seg.duration() == 0.0) continue;
    const Matrix2c rhs = complex(0.0, -1.0) * generator(params, seg.phase());
    // landing on the boundary; the 1e-9 slack keeps exact multiples of the step exact
    const auto steps =
        std::max<long>(1, static_cast<long>(std::ceil(seg.duration() / config.step - 1e-9)));
    const double h = seg.duration() / static_cast<double>(steps);
    const double t0 = t;
    for (long i = 0; i < steps; ++i) {
      const Vec2c k1 = rhs * a;
      const Vec2c k2 = rhs * (a + 0.5 * h * k1);
      const Vec2c k3 = rhs * (a + 0.5 * h * k2);
      const Vec2c k4 = rhs * (a + h * k3);
      a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = t0 + h * static_cast<double>(i + 1);
      if (dense) dense->push_back({t, {a(0), a(1)}});
    }
  }
  return {a(0), a(1)};
}

Matrix2c integrate_propagator(const CouplerParams& params,
                              std::span<const CouplingSegment> segments,
                              const IntegrationConfig& config) {
  const ModeState c1 = integrate(params, segments, ModeState::mode1(), config);
  const ModeState c2 = integrate(params, segments, ModeState::mode2(), config);
  Matrix2c m;
  m << c1.a1, c2.a1, c1.a2, c2.a2;
  return m;
}

double max_entry_error(const Matrix2c& reference, const TransferMatrix& m) {
  return std::max({std::abs(reference(0, 0) - m.m11()), std::abs(reference(0, 1) - m.m12()),
                   std::abs(reference(1, 0) - m.m21()), std::abs(reference(1, 1) - m.m22())});
}

TwoStepMaximum brute_force_two_step_max(const CouplerParams& params, double phase, int grid) {
  if (grid < 4) throw std::invalid_argument("grid must be >= 4");
  const double omega = omega_of(params);
  const double period = kPi / omega;  // |a2|^2 is periodic in each duration with this period

  std::vector<Vec2c> first(static_cast<std::size_t>(grid));
  std::vector<Matrix2c> second(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double t = period * i / grid;
    first[i] = exp_generator(params, 0.0, t) * Vec2c(1.0, 0.0);
    second[i] = exp_generator(params, phase, t);
  }
  struct Cell {
    double value;
    int i, j;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      cells.push_back({std::norm((second[j] * first[i])(1)), i, j});
  std::partial_sort(cells.begin(), cells.begin() + 4, cells.end(),
                    [](const Cell& a, const Cell& b) { return a.value > b.value; });

  // Omega t is only meaningful modulo pi here
  auto wrap = [](double x) {
    const double r = std::fmod(x, kPi);
    return r < 0.0 ? r + kPi : r;
  };
  auto objective = [&](std::span<const double> x) {
    const Vec2c a = exp_generator(params, phase, wrap(x[1]) / omega) *
                    (exp_generator(params, 0.0, wrap(x[0]) / omega) * Vec2c(1.0, 0.0));
    return -std::norm(a(1));
  };
  NelderMeadOptions opt;
  opt.initial_step = kPi / grid;
  opt.max_evaluations = 3000;
  TwoStepMaximum best;
  best.transferred = -1.0;
  for (int k = 0; k < 4; ++k) {
    const auto& c = cells[k];
    std::vector<double> x0 = {kPi * c.i / grid, kPi * c.j / grid};
    const auto r = nelder_mead(objective, x0, opt);
    const double value = std::max(-r.value, c.value);
    if (value > best.transferred) {
      if (-r.value >= c.value) best = {wrap(r.x[0]) / omega, wrap(r.x[1]) / omega, -r.value};
      else best = {period * c.i / grid, period * c.j / grid, c.value};
    }
  }
  return best;
}

}  // namespace pcmod::oracle
