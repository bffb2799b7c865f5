#include "pcmod/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pcmod {

double reduce_phase(double phase) {
  if (!std::isfinite(phase)) throw std::invalid_argument("phase must be finite");
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

CouplerParams::CouplerParams(double delta, double kappa0) : delta_(delta), kappa0_(kappa0) {
  if (!std::isfinite(delta) || !std::isfinite(kappa0))
    throw std::invalid_argument("coupler parameters must be finite");
  if (kappa0 < 0.0) throw std::invalid_argument("kappa0 must be non-negative");
  if (delta == 0.0 && kappa0 == 0.0)
    throw std::invalid_argument("delta and kappa0 cannot both be zero");
}

double CouplerParams::ratio() const {
  if (kappa0_ == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(delta_) / kappa0_;
}

CouplingSegment::CouplingSegment(double phase, double duration)
    : phase_(reduce_phase(phase)), duration_(duration) {
  if (!std::isfinite(duration) || duration < 0.0)
    throw std::invalid_argument("segment duration must be finite and >= 0, got " +
                                std::to_string(duration));
}

Protocol::Protocol(std::vector<CouplingSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("protocol needs at least one segment");
  if (!(total_duration() > 0.0))
    throw std::invalid_argument("protocol total duration must be positive");
}

double Protocol::total_duration() const {
  return std::accumulate(segments_.begin(), segments_.end(), 0.0,
                         [](double acc, const CouplingSegment& s) { return acc + s.duration(); });
}

double rabi_frequency(const CouplerParams& params) {
  return std::hypot(params.delta(), params.kappa0());
}

double omega_t_over_pi(const CouplerParams& params, double t) {
  return rabi_frequency(params) * t / kPi;
}

double time_from_omega_t_over_pi(const CouplerParams& params, double value) {
  return value * kPi / rabi_frequency(params);
}

TransferMatrix segment_propagator(const CouplerParams& params, const CouplingSegment& seg) {
  const double omega = rabi_frequency(params);
  const double angle = omega * seg.duration();
  const double s = std::sin(angle);
  const double c = std::cos(angle);
  const complex kappa = std::polar(params.kappa0(), seg.phase());
  return {complex(c, -params.delta() / omega * s), complex(0.0, -1.0) * kappa * (s / omega)};
}

TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier) {
  // [[a, b], [-b*, a*]] [[c, e], [-e*, c*]]
  return {later.d * earlier.d - later.o * std::conj(earlier.o),
          later.d * earlier.o + later.o * std::conj(earlier.d)};
}

TransferMatrix protocol_propagator(const CouplerParams& params,
                                   std::span<const CouplingSegment> segments) {
  if (segments.empty()) throw std::invalid_argument("protocol needs at least one segment");
  TransferMatrix total = TransferMatrix::identity();
  for (const auto& seg : segments) total = compose(segment_propagator(params, seg), total);
  return total;
}

TransferMatrix protocol_propagator(const CouplerParams& params, const Protocol& protocol) {
  return protocol_propagator(params, protocol.segments());
}

std::vector<TrajectorySample> propagate(const CouplerParams& params,
                                        std::span<const CouplingSegment> segments,
                                        const ModeState& initial, int sample_count) {
  if (segments.empty()) throw std::invalid_argument("protocol needs at least one segment");
  if (sample_count < 2) throw std::invalid_argument("sample_count must be >= 2");

  // exact states at segment boundaries
  std::vector<double> starts;
  std::vector<ModeState> boundary;
  starts.reserve(segments.size() + 1);
  boundary.reserve(segments.size() + 1);
  double t = 0.0;
  ModeState state = initial;
  for (const auto& seg : segments) {
    starts.push_back(t);
    boundary.push_back(state);
    t += seg.duration();
    state = segment_propagator(params, seg).apply(state);
  }
  const double total = t;
  const ModeState final_state = state;

  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(sample_count));
  std::size_t k = 0;
  for (int i = 0; i < sample_count; ++i) {
    if (i == 0) {
      out.push_back({0.0, initial});
      continue;
    }
    if (i == sample_count - 1) {
      out.push_back({total, final_state});
      continue;
    }
    const double ti = total * static_cast<double>(i) / static_cast<double>(sample_count - 1);
    while (k + 1 < segments.size() && ti >= starts[k + 1]) ++k;
    const double local = std::clamp(ti - starts[k], 0.0, segments[k].duration());
    const CouplingSegment partial(segments[k].phase(), local);
    out.push_back({ti, segment_propagator(params, partial).apply(boundary[k])});
  }
  return out;
}

std::vector<TrajectorySample> propagate(const CouplerParams& params, const Protocol& protocol,
                                        const ModeState& initial, int sample_count) {
  return propagate(params, protocol.segments(), initial, sample_count);
}

double static_max_transfer(const CouplerParams& params) {
  const double k2 = params.kappa0() * params.kappa0();
  return k2 / (params.delta() * params.delta() + k2);
}

}  // namespace pcmod
