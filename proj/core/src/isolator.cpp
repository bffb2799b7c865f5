#include "pcmod/isolator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"
#include "pcmod/dynamics.hpp"

namespace pcmod {

namespace {

Eigen::Matrix2cd dense(const TransferMatrix& m) {
  Eigen::Matrix2cd out;
  out << m.m11(), m.m12(), m.m21(), m.m22();
  return out;
}

Eigen::Matrix2cd passive(double theta1, double theta2) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  out(0, 0) = std::polar(1.0, theta1);
  out(1, 1) = std::polar(1.0, theta2);
  return out;
}

Protocol shifted(const Protocol& protocol, double offset) {
  std::vector<CouplingSegment> segs;
  for (const auto& s : protocol.segments()) segs.emplace_back(s.phase() - offset, s.duration());
  return Protocol(std::move(segs));
}

void append_stage(std::vector<BlochVector>& out, ModeState& state, const CouplerParams& params,
                  const Protocol& protocol, int samples) {
  const auto traj = propagate(params, protocol, state, samples);
  for (std::size_t i = 1; i < traj.size(); ++i) out.push_back(to_bloch(traj[i].state));
  state = traj.back().state;
}

void append_passive(std::vector<BlochVector>& out, ModeState& state, double theta1, double theta2,
                    int samples) {
  const ModeState start = state;
  for (int i = 1; i < samples; ++i) {
    const double lambda = static_cast<double>(i) / (samples - 1);
    state = {start.a1 * std::polar(1.0, lambda * theta1), start.a2 * std::polar(1.0, lambda * theta2)};
    out.push_back(to_bloch(state));
  }
}

}  // namespace

void validate(const IsolatorSpec& spec) {
  if (std::abs(spec.stage.unitarity_defect()) > 1e-12)
    throw std::invalid_argument("isolator stage must be unitary: |D|^2 + |O|^2 != 1");
}

TransferMatrix stage_with_offset(const TransferMatrix& stage, double offset) {
  return {stage.d, stage.o * std::polar(1.0, -offset)};
}

Eigen::Matrix2cd cascade(const IsolatorSpec& spec, Direction direction) {
  validate(spec);
  const Eigen::Matrix2cd m1 = dense(spec.stage);
  const Eigen::Matrix2cd m2 = passive(spec.theta1, spec.theta2);
  const Eigen::Matrix2cd m3 = dense(stage_with_offset(spec.stage, spec.offset));
  return direction == Direction::Forward ? Eigen::Matrix2cd(m3 * m2 * m1)
                                         : Eigen::Matrix2cd(m1 * m2 * m3);
}

double cross_transmission_power(const IsolatorSpec& spec, Direction direction) {
  return std::norm(cascade(spec, direction)(0, 1));
}

double closed_form_cross_power(const IsolatorSpec& spec, Direction direction) {
  validate(spec);
  const double sign = direction == Direction::Forward ? 1.0 : -1.0;
  const double d2 = std::norm(spec.stage.d);
  const double o2 = std::norm(spec.stage.o);
  const double arg_d = d2 > 0.0 ? std::arg(spec.stage.d) : 0.0;
  return 2.0 * d2 * o2 *
         (1.0 + std::cos(spec.differential_phase() + sign * spec.offset + 2.0 * arg_d));
}

double contrast_db(double forward, double backward) {
  constexpr double kClampDb = 120.0;
  if (std::abs(forward - backward) <= 1e-14) return 0.0;
  const double tiny = 1e-300;
  const double db = 10.0 * std::log10(std::max(forward, tiny) / std::max(backward, tiny));
  return std::clamp(db, -kClampDb, kClampDb);
}

DirectionalResponse respond(const IsolatorSpec& spec) {
  DirectionalResponse r;
  r.forward12 = cascade(spec, Direction::Forward)(0, 1);
  r.backward12 = cascade(spec, Direction::Backward)(0, 1);
  r.forward_power = std::norm(r.forward12);
  r.backward_power = std::norm(r.backward12);
  r.contrast_db = contrast_db(r.forward_power, r.backward_power);
  return r;
}

PhasePair optimal_phases() { return {kPi / 2.0, kPi / 2.0}; }

PhasePair optimal_phases(const TransferMatrix& stage, Direction pass) {
  const double arg_d = std::norm(stage.d) > 0.0 ? std::arg(stage.d) : 0.0;
  const double offset = pass == Direction::Backward ? kPi / 2.0 : -kPi / 2.0;
  return {reduce_phase(kPi / 2.0 - 2.0 * arg_d), reduce_phase(offset)};
}

ContrastSweep contrast_sweep(const TransferMatrix& stage, int n) {
  if (n < 16) throw std::invalid_argument("contrast sweep grid must be >= 16");
  ContrastSweep sweep;
  sweep.n = n;
  sweep.axis.resize(n);
  for (int i = 0; i < n; ++i) sweep.axis[i] = kTwoPi * i / (n - 1);
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  sweep.forward.resize(cells);
  sweep.backward.resize(cells);
  sweep.contrast.resize(cells);
  detail::parallel_for(n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const IsolatorSpec spec{stage, sweep.axis[i], 0.0, sweep.axis[j]};
      const auto r = respond(spec);
      const auto k = sweep.index(i, j);
      sweep.forward[k] = r.forward_power;
      sweep.backward[k] = r.backward_power;
      sweep.contrast[k] = r.contrast_db;
    }
  });
  return sweep;
}

std::vector<BlochVector> cascade_trajectory(const CouplerParams& params,
                                            const Protocol& stage_protocol, const PhasePair& phases,
                                            Direction direction, int samples_per_section) {
  if (samples_per_section < 2) throw std::invalid_argument("samples_per_section must be >= 2");
  const Protocol offset_stage = shifted(stage_protocol, phases.offset);
  const Protocol& first = direction == Direction::Forward ? stage_protocol : offset_stage;
  const Protocol& last = direction == Direction::Forward ? offset_stage : stage_protocol;

  ModeState state = ModeState::mode1();
  std::vector<BlochVector> out{to_bloch(state)};
  append_stage(out, state, params, first, samples_per_section);
  append_passive(out, state, phases.differential, 0.0, samples_per_section);
  append_stage(out, state, params, last, samples_per_section);
  return out;
}

}  // namespace pcmod
