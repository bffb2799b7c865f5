#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pcmod {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  double initial_step = 0.1;
  /// Stop when the simplex spread in f falls below this.
  double f_tolerance = 1e-15;
  /// Stop when the simplex diameter falls below this.
  double x_tolerance = 1e-12;
  int max_evaluations = 20000;
  /// Rebuild the simplex around the incumbent this many times after convergence.
  int restarts = 2;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Derivative-free simplex minimization (adaptive coefficients for higher dimensions).
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& options = {});

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
/// Returns the argmax.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tolerance = 1e-13);

}  // namespace pcmod
