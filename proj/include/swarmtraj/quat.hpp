#ifndef SWARMTRAJ_QUAT_HPP
#define SWARMTRAJ_QUAT_HPP

#include <algorithm>
#include <cmath>

#include "swarmtraj/types.hpp"

// Scalar-first Hamilton quaternions, world-from-body convention.

namespace swarmtraj {

inline Vec4 quat_multiply(const Vec4& a, const Vec4& b) {
  return Vec4(a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3),
              a(0) * b(1) + a(1) * b(0) + a(2) * b(3) - a(3) * b(2),
              a(0) * b(2) - a(1) * b(3) + a(2) * b(0) + a(3) * b(1),
              a(0) * b(3) + a(1) * b(2) - a(2) * b(1) + a(3) * b(0));
}

inline Vec4 quat_conjugate(const Vec4& q) { return Vec4(q(0), -q(1), -q(2), -q(3)); }

inline Vec4 quat_normalized(const Vec4& q) { return q / q.norm(); }

inline Vec4 quat_from_axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (n < 1e-15) return Vec4(1, 0, 0, 0);
  const Vec3 u = axis / n;
  const double h = 0.5 * angle;
  return Vec4(std::cos(h), u.x() * std::sin(h), u.y() * std::sin(h), u.z() * std::sin(h));
}

inline Mat3 quat_to_rotmat(const Vec4& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Mat3 R;
  R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return R;
}

inline Vec3 quat_rotate(const Vec4& q, const Vec3& v) { return quat_to_rotmat(q) * v; }

/// Body z axis in world frame, i.e. third column of R(q).
inline Vec3 quat_body_z(const Vec4& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  return Vec3(2 * (x * z + w * y), 2 * (y * z - w * x), 1 - 2 * (x * x + y * y));
}

/// Matrix form of right multiplication: q ⊗ r == R_mat(r) * q.
inline Mat4 quat_right_mat(const Vec4& r) {
  Mat4 M;
  M << r(0), -r(1), -r(2), -r(3),
       r(1),  r(0),  r(3), -r(2),
       r(2), -r(3),  r(0),  r(1),
       r(3),  r(2), -r(1),  r(0);
  return M;
}

/// d(q ⊗ [0,w]) / dw, a 4x3 matrix.
inline Eigen::Matrix<double, 4, 3> quat_omega_jac(const Vec4& q) {
  Eigen::Matrix<double, 4, 3> G;
  G << -q(1), -q(2), -q(3),
        q(0), -q(3),  q(2),
        q(3),  q(0), -q(1),
       -q(2),  q(1),  q(0);
  return G;
}

struct EulerZyx {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
  bool gimbal_degenerate = false;  // |pitch| within 1e-6 of pi/2
};

/// ZYX (yaw-pitch-roll) extraction. roll,yaw in (-pi,pi], pitch in [-pi/2,pi/2].
inline EulerZyx quat_to_euler_zyx(const Vec4& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  EulerZyx e;
  e.roll = std::atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y));
  double s = 2.0 * (w * y - z * x);
  s = std::clamp(s, -1.0, 1.0);
  e.pitch = std::asin(s);
  e.yaw = std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
  e.gimbal_degenerate = std::abs(e.pitch) > M_PI / 2.0 - 1e-6;
  return e;
}

/// Partial derivatives of the ZYX angles with respect to the quaternion
/// components. Near gimbal lock the pitch derivative is computed from a
/// floored sqrt(1-s^2), mirroring the clamped extraction above.
struct EulerZyxJacobian {
  Vec4 droll, dpitch, dyaw;
};

inline EulerZyxJacobian quat_to_euler_zyx_jacobian(const Vec4& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  EulerZyxJacobian J;

  const double a = 2.0 * (w * x + y * z);
  const double b = 1.0 - 2.0 * (x * x + y * y);
  const double rab = a * a + b * b;
  const Vec4 da(2 * x, 2 * w, 2 * z, 2 * y);
  const Vec4 db(0.0, -4 * x, -4 * y, 0.0);
  J.droll = (b * da - a * db) / std::max(rab, 1e-12);

  double s = std::clamp(2.0 * (w * y - z * x), -1.0, 1.0);
  const Vec4 ds(2 * y, -2 * z, 2 * w, -2 * x);
  J.dpitch = ds / std::max(std::sqrt(1.0 - s * s), 1e-6);

  const double c = 2.0 * (w * z + x * y);
  const double d = 1.0 - 2.0 * (y * y + z * z);
  const double rcd = c * c + d * d;
  const Vec4 dc(2 * z, 2 * y, 2 * x, 2 * w);
  const Vec4 dd(0.0, 0.0, -4 * y, -4 * z);
  J.dyaw = (d * dc - c * dd) / std::max(rcd, 1e-12);
  return J;
}

}  // namespace swarmtraj

#endif
