#pragma once

#include <span>
#include <vector>

#include "pcmod/types.hpp"

namespace pcmod {

/// sqrt(delta^2 + kappa0^2).
double rabi_frequency(const CouplerParams& params);

/// Omega * t / pi, the dimensionless time label used for all exported schedules.
double omega_t_over_pi(const CouplerParams& params, double t);

/// Inverse of omega_t_over_pi.
double time_from_omega_t_over_pi(const CouplerParams& params, double value);

/// Closed-form propagator of one constant-coupling interval:
///   D = cos(Wt) - i (delta/W) sin(Wt)
///   O = -i (kappa0 e^{i phase} / W) sin(Wt)
TransferMatrix segment_propagator(const CouplerParams& params, const CouplingSegment& seg);

/// Matrix product later * earlier, expressed back in (D, O) form.
TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier);

/// Ordered product of segment propagators, last segment leftmost.
/// Throws std::invalid_argument on an empty segment list.
TransferMatrix protocol_propagator(const CouplerParams& params,
                                   std::span<const CouplingSegment> segments);
TransferMatrix protocol_propagator(const CouplerParams& params, const Protocol& protocol);

struct TrajectorySample {
  double time = 0.0;
  ModeState state;
};

/// Uniform sampling of the exact evolution over the whole protocol.
///
/// Each sample is obtained from the closed-form propagator of the segment
/// containing it, applied to the exact state at that segment's start. The first
/// sample is `initial` and the last is protocol_propagator(...) applied to it.
std::vector<TrajectorySample> propagate(const CouplerParams& params,
                                        std::span<const CouplingSegment> segments,
                                        const ModeState& initial, int sample_count);
std::vector<TrajectorySample> propagate(const CouplerParams& params, const Protocol& protocol,
                                        const ModeState& initial, int sample_count);

/// kappa0^2 / (delta^2 + kappa0^2): the largest |a2|^2 reachable from mode 1
/// under a single constant coupling.
double static_max_transfer(const CouplerParams& params);

}  // namespace pcmod
