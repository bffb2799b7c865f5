#include "pcmod/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pcmod {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

MinimizeResult run_simplex(const Objective& f, const std::vector<double>& x0, double step,
                           const NelderMeadOptions& opt, int budget) {
  const std::size_t n = x0.size();
  const double dim = static_cast<double>(n);
  // Gao & Han adaptive parameters; they reduce to the standard ones at n = 2
  const double m = std::max(dim, 2.0);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / m;
  const double gamma = 0.75 - 1.0 / (2.0 * m);
  const double delta = 1.0 - 1.0 / m;

  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = x0;
    x[i] += step;
    simplex.push_back({x, eval(x)});
  }

  std::vector<double> centroid(n), trial(n), trial2(n);
  while (evals < budget) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const double spread = simplex.back().f - simplex.front().f;
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        diameter = std::max(diameter, std::abs(simplex[i].x[k] - simplex[0].x[k]));
    if (spread <= opt.f_tolerance || diameter <= opt.x_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / dim;

    Vertex& worst = simplex.back();
    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + alpha * (centroid[k] - worst.x[k]);
    const double fr = eval(trial);

    if (fr < simplex.front().f) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + beta * (trial[k] - centroid[k]);
      const double fe = eval(trial2);
      if (fe < fr) worst = {trial2, fe};
      else worst = {trial, fr};
      continue;
    }
    if (fr < simplex[n - 1].f) {
      worst = {trial, fr};
      continue;
    }
    const bool outside = fr < worst.f;
    for (std::size_t k = 0; k < n; ++k) {
      trial2[k] = outside ? centroid[k] + gamma * (trial[k] - centroid[k])
                          : centroid[k] - gamma * (centroid[k] - worst.x[k]);
    }
    const double fc = eval(trial2);
    if (fc < std::min(fr, worst.f)) {
      worst = {trial2, fc};
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k)
        simplex[i].x[k] = simplex[0].x[k] + delta * (simplex[i].x[k] - simplex[0].x[k]);
      simplex[i].f = eval(simplex[i].x);
    }
  }
  const auto best = std::min_element(simplex.begin(), simplex.end(),
                                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return {best->x, best->f, evals};
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& options) {
  if (x0.empty()) throw std::invalid_argument("nelder_mead needs at least one variable");
  MinimizeResult best{x0, f(x0), 1};
  double step = options.initial_step;
  for (int round = 0; round <= options.restarts; ++round) {
    const int budget = options.max_evaluations - best.evaluations;
    if (budget <= static_cast<int>(x0.size()) + 1) break;
    auto r = run_simplex(f, best.x, step, options, budget);
    const int used = best.evaluations + r.evaluations;
    if (r.value <= best.value) best = std::move(r);
    best.evaluations = used;
    step *= 0.1;
  }
  return best;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 300 && b - a > tolerance; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace pcmod
