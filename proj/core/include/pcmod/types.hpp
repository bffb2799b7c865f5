#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace pcmod {

using complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2pi).
double reduce_phase(double phase);

/// Detuning and coupling magnitude of a two-mode coupler, both in rad per unit time.
///
/// Detuning is signed. The coupling magnitude must be non-negative, and the
/// fully degenerate point (both zero) is rejected because the Rabi frequency
/// would vanish.
class CouplerParams {
public:
  explicit CouplerParams(double delta, double kappa0 = 1.0);

  double delta() const { return delta_; }
  double kappa0() const { return kappa0_; }

  /// |delta| / kappa0; infinite when kappa0 == 0.
  double ratio() const;

private:
  double delta_;
  double kappa0_;
};

/// One piecewise-constant interval of complex coupling kappa0 * exp(i * phase).
class CouplingSegment {
public:
  CouplingSegment(double phase, double duration);

  double phase() const { return phase_; }
  double duration() const { return duration_; }

private:
  double phase_;
  double duration_;
};

/// Complex amplitudes of the two supermodes.
struct ModeState {
  complex a1{1.0, 0.0};
  complex a2{0.0, 0.0};

  double norm_sq() const { return std::norm(a1) + std::norm(a2); }
  /// Power in mode 2, |a2|^2.
  double transferred() const { return std::norm(a2); }

  static ModeState mode1() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static ModeState mode2() { return {{0.0, 0.0}, {1.0, 0.0}}; }
};

/// Unitary [[d, o], [-conj(o), conj(d)]].
///
/// The lower-left entry is -conj(o). Some printed forms of the composite
/// matrix drop the conjugate; that form is not unitary in general and is
/// not used here.
struct TransferMatrix {
  complex d{1.0, 0.0};
  complex o{0.0, 0.0};

  static TransferMatrix identity() { return {}; }

  complex m11() const { return d; }
  complex m12() const { return o; }
  complex m21() const { return -std::conj(o); }
  complex m22() const { return std::conj(d); }

  /// |d|^2 + |o|^2 - 1.
  double unitarity_defect() const { return std::norm(d) + std::norm(o) - 1.0; }

  ModeState apply(const ModeState& s) const {
    return {d * s.a1 + o * s.a2, -std::conj(o) * s.a1 + std::conj(d) * s.a2};
  }
};

/// Ordered switching schedule. Never empty and always of positive total duration.
class Protocol {
public:
  explicit Protocol(std::vector<CouplingSegment> segments);

  std::span<const CouplingSegment> segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  double total_duration() const;

private:
  std::vector<CouplingSegment> segments_;
};

}  // namespace pcmod
