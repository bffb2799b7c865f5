#include "pcmod/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

#include "pcmod/dynamics.hpp"

namespace pcmod {

namespace {

// Right-handed rotation of x about unit axis n by `angle`.
Vec3 rotate(const Vec3& n, const Vec3& x, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return x * c + n.cross(x) * s + n * (n.dot(x) * (1.0 - c));
}

void require_coupling(const CouplerParams& params) {
  if (!(params.kappa0() > 0.0))
    throw std::invalid_argument("kappa0 must be positive: the rotation axis is polar");
}

}  // namespace

double BlochVector::polar() const { return std::atan2(std::hypot(u, v), w); }

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

BlochVector to_bloch(const ModeState& state) {
  if (std::abs(state.norm_sq() - 1.0) > 1e-9)
    throw std::invalid_argument("to_bloch expects a unit-norm state");
  const complex x = state.a1 * std::conj(state.a2);
  return {2.0 * x.real(), 2.0 * x.imag(), std::norm(state.a1) - std::norm(state.a2)};
}

RotationAxis rotation_axis(const CouplerParams& params, double phase) {
  const double omega = rabi_frequency(params);
  const Vec3 n(params.kappa0() * std::cos(phase), params.kappa0() * std::sin(phase),
               params.delta());
  return {n / omega, omega};
}

BlochVector bloch_precess(const RotationAxis& axis, const BlochVector& s, double t) {
  return BlochVector::from(rotate(axis.n, s.vec(), -2.0 * axis.rate * t));
}

double precession_time(const RotationAxis& axis, const BlochVector& from, const BlochVector& to) {
  const Vec3& n = axis.n;
  const Vec3 a = from.vec() - n * n.dot(from.vec());
  const Vec3 b = to.vec() - n * n.dot(to.vec());
  if (a.norm() < 1e-15 || b.norm() < 1e-15) return 0.0;
  const double signed_angle = std::atan2(n.dot(a.cross(b)), a.dot(b));
  if (std::abs(signed_angle) < 1e-14) return 0.0;
  // the motion is clockwise about n, so a right-handed angle alpha needs a turn of 2pi - alpha
  double turn = -signed_angle;
  if (turn < 0.0) turn += kTwoPi;
  return turn / (2.0 * axis.rate);
}

double descent_rate(const RotationAxis& axis, const BlochVector& s) {
  // dS/dt = 2 Omega S x n
  const Vec3 velocity = 2.0 * axis.rate * s.vec().cross(axis.n);
  return -velocity.z();
}

double elevation_angle(const CouplerParams& params) {
  require_coupling(params);
  return std::atan(params.delta() / params.kappa0());
}

double cone_aperture(const CouplerParams& params) { return 2.0 * elevation_angle(params); }

double axis_angle(const CouplerParams& params, double phase1, double phase2) {
  return angle_between(rotation_axis(params, phase1).n, rotation_axis(params, phase2).n);
}

bool two_step_feasible(const CouplerParams& params, double phase) {
  const double gap = 2.0 * std::abs(elevation_angle(params));
  return axis_angle(params, 0.0, phase) >= gap - kAngleTol;
}

double feasibility_boundary(double ratio) {
  if (!(ratio >= 0.0)) throw std::invalid_argument("detuning ratio must be >= 0");
  if (ratio > 1.0)
    throw std::invalid_argument("no two-step boundary above |delta|/kappa0 = 1");
  return std::acos(std::clamp(1.0 - 2.0 * ratio * ratio, -1.0, 1.0));
}

SphericalCircle circle_through(const RotationAxis& axis, const BlochVector& point) {
  return {axis.n, angle_between(axis.n, point.vec().normalized())};
}

CircleIntersection circle_intersection(const SphericalCircle& c1, const SphericalCircle& c2) {
  for (const auto* c : {&c1, &c2}) {
    if (std::abs(c->center.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("circle center must be a unit vector");
    if (c->radius < 0.0 || c->radius > kPi)
      throw std::invalid_argument("circle radius must lie in [0, pi]");
  }
  CircleIntersection out;
  const Vec3& p = c1.center;
  const Vec3& q = c2.center;
  const double r1 = c1.radius;
  const double r2 = c2.radius;
  const double d = angle_between(p, q);

  if (d < kAngleTol) {
    if (std::abs(r1 - r2) < kAngleTol) out.kind = CircleIntersection::Kind::Coincident;
    return out;
  }
  if (kPi - d < kAngleTol) {
    // antipodal centers: circle 2 is the circle about p with radius pi - r2
    if (std::abs(r1 + r2 - kPi) < kAngleTol) out.kind = CircleIntersection::Kind::Coincident;
    return out;
  }

  // Non-negative slacks when an intersection exists. The third covers circles
  // that wrap around the far side of the sphere.
  const double slack = std::min({d - std::abs(r1 - r2), r1 + r2 - d, 2.0 * kPi - r1 - r2 - d});
  if (slack < -kAngleTol) return out;

  const double cd = std::cos(d);
  const double sd2 = 1.0 - cd * cd;
  const double a = (std::cos(r1) - cd * std::cos(r2)) / sd2;
  const double b = (std::cos(r2) - cd * std::cos(r1)) / sd2;
  const Vec3 base = a * p + b * q;
  const Vec3 normal = p.cross(q);
  const double h2 = (1.0 - base.squaredNorm()) / normal.squaredNorm();

  if (slack <= kAngleTol || h2 <= 0.0) {
    out.kind = CircleIntersection::Kind::Tangent;
    out.points.push_back(base.normalized());
    return out;
  }
  const double h = std::sqrt(h2);
  out.kind = CircleIntersection::Kind::Two;
  out.points.push_back((base + h * normal).normalized());
  out.points.push_back((base - h * normal).normalized());
  return out;
}

}  // namespace pcmod
