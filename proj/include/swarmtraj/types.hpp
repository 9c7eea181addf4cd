#ifndef SWARMTRAJ_TYPES_HPP
#define SWARMTRAJ_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmtraj {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// Thrown on malformed numerical inputs (non-finite values, dimension
// mismatches, violated preconditions).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown on bad scenario files or inconsistent configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an optimization cannot produce a usable result.
struct SolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// State of one rigid body: world-frame position/velocity, scalar-first
/// unit quaternion (world-from-body), body-frame angular velocity.
struct RigidBodyState {
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Vec4 q = Vec4(1.0, 0.0, 0.0, 0.0);  // [w, x, y, z]
  Vec3 w = Vec3::Zero();

  bool finite() const {
    return p.allFinite() && v.allFinite() && q.allFinite() && w.allFinite();
  }

  /// Flattened [p v q w], 13 entries.
  Eigen::Matrix<double, 13, 1> flat() const {
    Eigen::Matrix<double, 13, 1> x;
    x << p, v, q, w;
    return x;
  }
  static RigidBodyState from_flat(const Eigen::Ref<const VecX>& x) {
    RigidBodyState s;
    s.p = x.segment<3>(0);
    s.v = x.segment<3>(3);
    s.q = x.segment<4>(6);
    s.w = x.segment<3>(10);
    return s;
  }
};

/// Per-rotor thrusts in newtons, rotor order matching the torque map.
struct RotorThrusts {
  Vec4 T = Vec4::Zero();

  double total() const { return T.sum(); }
  static RotorThrusts hover(double mass, double gravity_norm) {
    RotorThrusts u;
    u.T.setConstant(mass * gravity_norm / 4.0);
    return u;
  }
};

struct QuadrotorParams {
  double mass = 0.6;                       // kg
  Mat3 inertia = Mat3::Zero();             // kg m^2
  double arm_length = 0.14;                // m
  double torque_coeff = 0.012;             // m, yaw torque per newton
  double thrust_min = 1.0;                 // N per rotor
  double thrust_max = 7.35;                // N per rotor
  double thrust_rate_max = 120.0;          // N/s per rotor
  double tilt_max = 60.0 * M_PI / 180.0;   // rad, roll/pitch bound
  double yaw_max = 5.0 * M_PI / 180.0;     // rad
  Vec3 gravity = Vec3(0.0, 0.0, -9.81);    // m/s^2

  QuadrotorParams() { inertia = Vec3(2.3e-3, 2.3e-3, 4.0e-3).asDiagonal(); }

  void validate() const {
    if (!(mass > 0.0)) throw InvalidInput("quadrotor mass must be positive");
    if (!inertia.allFinite() || !inertia.isApprox(inertia.transpose(), 1e-12))
      throw InvalidInput("inertia must be finite and symmetric");
    Eigen::SelfAdjointEigenSolver<Mat3> es(inertia);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw InvalidInput("inertia must be positive definite");
    if (!(thrust_min >= 0.0 && thrust_min < thrust_max))
      throw InvalidInput("thrust bounds require 0 <= T_min < T_max");
    if (!(thrust_rate_max > 0.0)) throw InvalidInput("thrust rate bound must be positive");
    if (!(arm_length > 0.0) || !(tilt_max > 0.0) || !(yaw_max > 0.0))
      throw InvalidInput("geometry and attitude bounds must be positive");
  }
};

/// Double-integrator test model with a per-axis acceleration bound.
struct PointMassParams {
  double accel_max = 5.0;  // m/s^2 per axis

  void validate() const {
    if (!(accel_max > 0.0)) throw InvalidInput("accel_max must be positive");
  }
};

}  // namespace swarmtraj

#endif
