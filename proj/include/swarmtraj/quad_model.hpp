#ifndef SWARMTRAJ_QUAD_MODEL_HPP
#define SWARMTRAJ_QUAD_MODEL_HPP

#include "swarmtraj/quat.hpp"
#include "swarmtraj/types.hpp"

namespace swarmtraj {

struct Wrench {
  Vec3 thrust = Vec3::Zero();  // world-frame magnitude lives on body z
  Vec3 torque = Vec3::Zero();  // body frame
};

/// Collective thrust vector (0,0,sum Ts) and body torque from per-rotor
/// thrusts. X-configuration mixer: arms at 45 degrees, yaw via drag torque.
Wrench rotor_wrench(const RotorThrusts& u, const QuadrotorParams& params);

/// 4x4 map from rotor thrusts to [total thrust, tau_x, tau_y, tau_z].
Mat4 rotor_mix_matrix(const QuadrotorParams& params);

/// Continuous-time rigid body dynamics. State derivative as flat 13-vector
/// [pdot vdot qdot wdot]. Requires |q| within 1e-6 of unit.
Eigen::Matrix<double, 13, 1> quad_dynamics(const RigidBodyState& x, const RotorThrusts& u,
                                           const QuadrotorParams& params);

struct QuadJacobians {
  Eigen::Matrix<double, 13, 13> df_dx;
  Eigen::Matrix<double, 13, 4> df_du;
};

/// Analytic partials of quad_dynamics with respect to state and input.
QuadJacobians quad_dynamics_jacobians(const RigidBodyState& x, const RotorThrusts& u,
                                      const QuadrotorParams& params);

/// One classical RK4 step with zero-order-hold input; quaternion is
/// renormalized afterwards.
RigidBodyState rk4_step(const RigidBodyState& x, const RotorThrusts& u,
                        const QuadrotorParams& params, double dt);

struct StepJacobians {
  Eigen::Matrix<double, 13, 13> dx;
  Eigen::Matrix<double, 13, 4> du;
};

/// Jacobians of rk4_step (including the renormalization) by chaining the
/// four stage jacobians.
StepJacobians rk4_step_jacobians(const RigidBodyState& x, const RotorThrusts& u,
                                 const QuadrotorParams& params, double dt);

// --- point mass test model -------------------------------------------------

struct PointMassState {
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();

  Eigen::Matrix<double, 6, 1> flat() const {
    Eigen::Matrix<double, 6, 1> x;
    x << p, v;
    return x;
  }
};

/// Double integrator: pdot = v, vdot = a_cmd. No gravity. a_cmd must respect
/// the per-axis bound.
Eigen::Matrix<double, 6, 1> point_mass_dynamics(const PointMassState& x, const Vec3& a_cmd,
                                                const PointMassParams& params);

/// Exact for piecewise-constant acceleration; RK4 reduces to the closed form.
PointMassState point_mass_step(const PointMassState& x, const Vec3& a_cmd, double dt);

// --- generic model used by the transcription --------------------------------

enum class ModelKind { Quadrotor, PointMass };

/// Bundles whichever vehicle a scenario optimizes, so the transcription and
/// solver can stay model-agnostic. Positions always occupy the first three
/// state entries.
struct ModelSpec {
  ModelKind kind = ModelKind::Quadrotor;
  QuadrotorParams quad;
  PointMassParams point_mass;

  int nx() const { return kind == ModelKind::Quadrotor ? 13 : 6; }
  int nu() const { return kind == ModelKind::Quadrotor ? 4 : 3; }
  bool has_quaternion() const { return kind == ModelKind::Quadrotor; }

  /// Input that holds the vehicle at rest.
  VecX neutral_input() const;
  void input_bounds(VecX& lb, VecX& ub) const;
};

/// One integrator step on the flat state vector, dispatching on model kind.
VecX model_step(const ModelSpec& model, const Eigen::Ref<const VecX>& x,
                const Eigen::Ref<const VecX>& u, double dt);

/// Jacobians of model_step with respect to state and input.
void model_step_jacobians(const ModelSpec& model, const Eigen::Ref<const VecX>& x,
                          const Eigen::Ref<const VecX>& u, double dt, MatX& dx, MatX& du);

}  // namespace swarmtraj

#endif
