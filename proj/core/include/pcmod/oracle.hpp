#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pcmod/types.hpp"

// Brute-force reference for the coupled-mode dynamics. Nothing in here uses the
// closed-form propagators; it integrates i dA/dt = H A directly so that it can
// serve as an independent check of them.
namespace pcmod::oracle {

using Matrix2c = Eigen::Matrix2cd;

/// Fixed-step classical RK4 settings.
struct IntegrationConfig {
  double step = 1e-3;
  /// When set, step * Omega must not exceed 0.01. Convergence studies clear it
  /// to probe coarser steps; step * Omega > 0.1 is rejected regardless.
  bool enforce_fine_step = true;

  /// step = 0.001 / Omega.
  static IntegrationConfig defaults(const CouplerParams& params);
};

/// H = [[delta, kappa0 e^{i phase}], [kappa0 e^{-i phase}, -delta]] with
/// i dA/dt = H A.
Matrix2c generator(const CouplerParams& params, double phase);

/// exp(-i H t) by scaling and squaring (Eigen MatrixFunctions).
Matrix2c exp_generator(const CouplerParams& params, double phase, double t);

/// Ordered product of exp_generator over the segments.
Matrix2c exp_propagator(const CouplerParams& params, std::span<const CouplingSegment> segments);

struct Sample {
  double time = 0.0;
  ModeState state;
};

/// RK4 through each segment, landing exactly on every segment boundary. No
/// renormalization is applied. If `dense` is given it receives every step.
ModeState integrate(const CouplerParams& params, std::span<const CouplingSegment> segments,
                    const ModeState& initial, const IntegrationConfig& config,
                    std::vector<Sample>* dense = nullptr);

/// Full 2x2 propagator assembled from integrating both basis states.
Matrix2c integrate_propagator(const CouplerParams& params,
                              std::span<const CouplingSegment> segments,
                              const IntegrationConfig& config);

/// Largest entry-wise deviation between a dense propagator and (D, O) form.
double max_entry_error(const Matrix2c& reference, const TransferMatrix& m);

struct TwoStepMaximum {
  double t1 = 0.0;
  double t2 = 0.0;
  double transferred = 0.0;
};

/// Brute-force max of |a2|^2 after (phase 0, t1) then (phase, t2) from mode 1:
/// grid x grid scan over Omega t in [0, pi) each, then simplex refinement from
/// the best few cells. Propagators come from exp_generator.
TwoStepMaximum brute_force_two_step_max(const CouplerParams& params, double phase,
                                        int grid = 64);

}  // namespace pcmod::oracle
