#pragma once

#include <vector>

#include <Eigen/Core>

#include "pcmod/bloch.hpp"
#include "pcmod/types.hpp"

namespace pcmod {

enum class Direction { Forward, Backward };

/// Two identical modulated stages around a passive phase section. The second
/// stage (M3) runs with RF phase offset `offset` relative to the first (M1).
///
/// Backward propagation reuses the same stage matrices in reversed order
/// (M1 M2 M3); no separate model of counter-propagating waves is attempted.
struct IsolatorSpec {
  TransferMatrix stage;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double offset = 0.0;

  double differential_phase() const { return theta1 - theta2; }
};

struct DirectionalResponse {
  complex forward12;
  complex backward12;
  double forward_power = 0.0;
  double backward_power = 0.0;
  /// 10 log10(forward / backward), clamped to +-120 dB.
  double contrast_db = 0.0;
};

struct PhasePair {
  double differential = 0.0;  ///< theta1 - theta2
  double offset = 0.0;        ///< RF offset of the second stage
};

/// Throws std::invalid_argument unless |D|^2 + |O|^2 = 1 within 1e-12.
void validate(const IsolatorSpec& spec);

/// D unchanged, O -> O e^{-i offset}.
TransferMatrix stage_with_offset(const TransferMatrix& stage, double offset);

/// Forward: M3 M2 M1. Backward: M1 M2 M3. M2 = diag(e^{i theta1}, e^{i theta2}).
/// The passive section carries a global phase, so the product is a general
/// 2x2 unitary rather than (D, O) form.
Eigen::Matrix2cd cascade(const IsolatorSpec& spec, Direction direction);

/// |(1,2) element of cascade(direction)|^2.
double cross_transmission_power(const IsolatorSpec& spec, Direction direction);

/// Interference form of the cross power,
///   2 |D|^2 |O|^2 [1 + cos(dtheta +- offset + 2 arg D)],
/// plus sign forward. For a real D this is the familiar
/// 2 |D|^2 |O|^2 [1 + cos(dtheta +- offset)].
double closed_form_cross_power(const IsolatorSpec& spec, Direction direction);

DirectionalResponse respond(const IsolatorSpec& spec);

/// 10 log10(forward / backward) clamped to +-120 dB; 0 dB when the two powers
/// agree within 1e-14.
double contrast_db(double forward, double backward);

/// (pi/2, pi/2): blocks forward and passes backward for a balanced real-D stage.
PhasePair optimal_phases();

/// Phases giving full cross transmission in `pass` and none in the other
/// direction for any balanced stage, compensating the 2 arg D shift.
PhasePair optimal_phases(const TransferMatrix& stage, Direction pass);

/// Forward/backward cross power and contrast over (dtheta, offset) in [0, 2pi]^2,
/// endpoints included so the periodic boundary rows are explicit.
struct ContrastSweep {
  int n = 0;
  std::vector<double> axis;
  /// Row-major, row index along dtheta.
  std::vector<double> forward;
  std::vector<double> backward;
  std::vector<double> contrast;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }
};

ContrastSweep contrast_sweep(const TransferMatrix& stage, int n);

/// Bloch trajectory of mode 1 through the cascade with the stage realized by
/// `stage_protocol`; the passive section is drawn as a linear phase ramp.
std::vector<BlochVector> cascade_trajectory(const CouplerParams& params,
                                            const Protocol& stage_protocol, const PhasePair& phases,
                                            Direction direction, int samples_per_section = 200);

}  // namespace pcmod
