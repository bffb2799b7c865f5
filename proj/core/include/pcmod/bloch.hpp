#pragma once

#include <vector>

#include <Eigen/Core>

#include "pcmod/types.hpp"

namespace pcmod {

using Vec3 = Eigen::Vector3d;

/// Tolerance used for every angular comparison and tangency decision.
inline constexpr double kAngleTol = 1e-9;

/// Real Bloch vector of a two-mode state.
///
///   u = 2 Re{a1 a2*},  v = 2 Im{a1 a2*},  w = |a1|^2 - |a2|^2
///
/// w = +1 (North pole) is all power in mode 1, w = -1 (South pole) all power in mode 2.
struct BlochVector {
  double u = 0.0;
  double v = 0.0;
  double w = 1.0;

  Vec3 vec() const { return {u, v, w}; }
  static BlochVector from(const Vec3& x) { return {x.x(), x.y(), x.z()}; }
  static BlochVector north() { return {0.0, 0.0, 1.0}; }
  static BlochVector south() { return {0.0, 0.0, -1.0}; }

  /// Angle from the North pole, in [0, pi].
  double polar() const;
};

struct RotationAxis {
  Vec3 n = Vec3::UnitX();
  /// Rabi frequency Omega. The Bloch vector turns through 2 * Omega * t.
  double rate = 1.0;
};

struct SphericalCircle {
  Vec3 center = Vec3::UnitZ();
  double radius = 0.0;
};

/// Angle between two unit vectors, robust near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

/// Throws std::invalid_argument if |a1|^2 + |a2|^2 differs from 1 by more than 1e-9.
BlochVector to_bloch(const ModeState& state);

/// n = (kappa0 cos(phase), kappa0 sin(phase), delta) / Omega.
RotationAxis rotation_axis(const CouplerParams& params, double phase);

/// Rotates `s` about `axis.n` through 2 * Omega * t.
///
/// Under the (u, v, w) convention above the amplitude dynamics produce
/// dS/dt = -2 Omega n x S, so the turn is clockwise when viewed from the tip
/// of n (negative right-hand sense).
BlochVector bloch_precess(const RotationAxis& axis, const BlochVector& s, double t);

/// Shortest t >= 0 with bloch_precess(axis, from, t) == to. Both points must
/// lie on the same precession circle; the result is in [0, pi / Omega).
double precession_time(const RotationAxis& axis, const BlochVector& from, const BlochVector& to);

/// -dw/dt at `s` when precessing about `axis`.
double descent_rate(const RotationAxis& axis, const BlochVector& s);

/// psi = arctan(delta / kappa0), signed. Throws if kappa0 == 0.
double elevation_angle(const CouplerParams& params);

/// Aperture 2 * psi of the cone around the South pole that static evolution
/// from the North pole cannot enter.
double cone_aperture(const CouplerParams& params);

/// Geodesic angle between the rotation axes for phases phase1 and phase2.
double axis_angle(const CouplerParams& params, double phase1, double phase2);

/// Two-segment complete transfer criterion for relative phase `phase`:
/// axis_angle >= 2|psi|, equality counted as feasible.
bool two_step_feasible(const CouplerParams& params, double phase);

/// Smallest relative phase allowing two-segment transfer at detuning ratio
/// |delta|/kappa0 in [0, 1]: arccos(1 - 2 ratio^2).
double feasibility_boundary(double ratio);

/// Precession orbit of `point` about `axis`.
SphericalCircle circle_through(const RotationAxis& axis, const BlochVector& point);

struct CircleIntersection {
  enum class Kind { None, Tangent, Two, Coincident };
  Kind kind = Kind::None;
  std::vector<Vec3> points;

  std::size_t count() const { return points.size(); }
};

/// Exact intersection of two circles on the unit sphere.
CircleIntersection circle_intersection(const SphericalCircle& c1, const SphericalCircle& c2);

}  // namespace pcmod
