#include "swarmtraj/quad_model.hpp"

namespace swarmtraj {

Wrench rotor_wrench(const RotorThrusts& u, const QuadrotorParams& params) {
  if (!u.T.allFinite()) throw InvalidInput("rotor thrusts must be finite");
  const double T1 = u.T(0), T2 = u.T(1), T3 = u.T(2), T4 = u.T(3);
  const double ls = params.arm_length / std::sqrt(2.0);
  Wrench w;
  w.thrust = Vec3(0.0, 0.0, T1 + T2 + T3 + T4);
  w.torque = Vec3(ls * (T1 + T2 - T3 - T4),
                  ls * (-T1 + T2 + T3 - T4),
                  params.torque_coeff * (T1 - T2 + T3 - T4));
  return w;
}

Mat4 rotor_mix_matrix(const QuadrotorParams& params) {
  const double ls = params.arm_length / std::sqrt(2.0);
  const double c = params.torque_coeff;
  Mat4 M;
  M << 1, 1, 1, 1,
      ls, ls, -ls, -ls,
      -ls, ls, ls, -ls,
      c, -c, c, -c;
  return M;
}

namespace {

using X13 = Eigen::Matrix<double, 13, 1>;
using M13 = Eigen::Matrix<double, 13, 13>;
using B13 = Eigen::Matrix<double, 13, 4>;

inline Mat3 skew(const Vec3& v) {
  Mat3 S;
  S << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return S;
}

// d(body z axis)/dq, 3x4.
inline Eigen::Matrix<double, 3, 4> body_z_jac(const Vec4& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Eigen::Matrix<double, 3, 4> D;
  D << 2 * y, 2 * z, 2 * w, 2 * x,
      -2 * x, -2 * w, 2 * z, 2 * y,
      0, -4 * x, -4 * y, 0;
  return D;
}

// Dynamics without the unit-quaternion precondition. The RK4 stages and the
// shooting iterates live slightly off the manifold; the expressions stay
// smooth there, which is what the optimizer differentiates.
X13 dyn_raw(const X13& x, const Vec4& uT, const QuadrotorParams& params) {
  const Vec3 v = x.segment<3>(3);
  const Vec4 q = x.segment<4>(6);
  const Vec3 w = x.segment<3>(10);

  X13 xdot;
  xdot.segment<3>(0) = v;
  xdot.segment<3>(3) = params.gravity + quat_body_z(q) * (uT.sum() / params.mass);
  xdot.segment<4>(6) = 0.5 * quat_multiply(q, Vec4(0.0, w.x(), w.y(), w.z()));

  const double ls = params.arm_length / std::sqrt(2.0);
  const double c = params.torque_coeff;
  const Vec3 tau(ls * (uT(0) + uT(1) - uT(2) - uT(3)),
                 ls * (-uT(0) + uT(1) + uT(2) - uT(3)),
                 c * (uT(0) - uT(1) + uT(2) - uT(3)));
  const Vec3 Jw = params.inertia * w;
  xdot.segment<3>(10) = params.inertia.ldlt().solve(tau - w.cross(Jw));
  return xdot;
}

void dyn_jac_raw(const X13& x, const QuadrotorParams& params, double total_thrust,
                 M13& A, B13& B) {
  const Vec4 q = x.segment<4>(6);
  const Vec3 w = x.segment<3>(10);

  A.setZero();
  B.setZero();

  // pdot = v
  A.block<3, 3>(0, 3).setIdentity();

  // vdot = g + z_B * (sum T)/m
  A.block<3, 4>(3, 6) = body_z_jac(q) * (total_thrust / params.mass);
  const Vec3 zb_over_m = quat_body_z(q) / params.mass;
  for (int s = 0; s < 4; ++s) B.block<3, 1>(3, s) = zb_over_m;

  // qdot = 0.5 * q ⊗ [0, w]
  A.block<4, 4>(6, 6) = 0.5 * quat_right_mat(Vec4(0.0, w.x(), w.y(), w.z()));
  A.block<4, 3>(6, 10) = 0.5 * quat_omega_jac(q);

  // wdot = J^-1 (tau - w x Jw)
  const Mat3 Jinv = params.inertia.inverse();
  A.block<3, 3>(10, 10) = Jinv * (skew(params.inertia * w) - skew(w) * params.inertia);
  const double ls = params.arm_length / std::sqrt(2.0);
  const double c = params.torque_coeff;
  Eigen::Matrix<double, 3, 4> dtau_du;
  dtau_du << ls, ls, -ls, -ls,
      -ls, ls, ls, -ls,
      c, -c, c, -c;
  B.block<3, 4>(10, 0) = Jinv * dtau_du;
}

X13 rk4_raw(const X13& x0, const Vec4& uT, const QuadrotorParams& params, double dt) {
  const X13 k1 = dyn_raw(x0, uT, params);
  const X13 k2 = dyn_raw(x0 + 0.5 * dt * k1, uT, params);
  const X13 k3 = dyn_raw(x0 + 0.5 * dt * k2, uT, params);
  const X13 k4 = dyn_raw(x0 + dt * k3, uT, params);
  X13 x1 = x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  x1.segment<4>(6).normalize();
  return x1;
}

void rk4_jac_raw(const X13& x0, const Vec4& uT, const QuadrotorParams& params, double dt,
                 M13& dx, B13& du) {
  const double total = uT.sum();

  const X13 k1 = dyn_raw(x0, uT, params);
  const X13 x2 = x0 + 0.5 * dt * k1;
  const X13 k2 = dyn_raw(x2, uT, params);
  const X13 x3 = x0 + 0.5 * dt * k2;
  const X13 k3 = dyn_raw(x3, uT, params);
  const X13 x4 = x0 + dt * k3;
  const X13 k4 = dyn_raw(x4, uT, params);

  M13 A1, A2, A3, A4;
  B13 B1, B2, B3, B4;
  dyn_jac_raw(x0, params, total, A1, B1);
  dyn_jac_raw(x2, params, total, A2, B2);
  dyn_jac_raw(x3, params, total, A3, B3);
  dyn_jac_raw(x4, params, total, A4, B4);

  const M13 I = M13::Identity();
  const M13 dk1 = A1;
  const M13 dk2 = A2 * (I + 0.5 * dt * dk1);
  const M13 dk3 = A3 * (I + 0.5 * dt * dk2);
  const M13 dk4 = A4 * (I + dt * dk3);

  const B13 bk1 = B1;
  const B13 bk2 = B2 + A2 * (0.5 * dt * bk1);
  const B13 bk3 = B3 + A3 * (0.5 * dt * bk2);
  const B13 bk4 = B4 + A4 * (dt * bk3);

  dx = I + (dt / 6.0) * (dk1 + 2.0 * dk2 + 2.0 * dk3 + dk4);
  du = (dt / 6.0) * (bk1 + 2.0 * bk2 + 2.0 * bk3 + bk4);

  // Renormalization acts on the quaternion rows: q -> q/|q|.
  const X13 x1 = x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  const Vec4 qpre = x1.segment<4>(6);
  const double n = qpre.norm();
  const Vec4 qn = qpre / n;
  const Mat4 D = (Mat4::Identity() - qn * qn.transpose()) / n;
  dx.middleRows<4>(6) = D * dx.middleRows<4>(6);
  du.middleRows<4>(6) = D * du.middleRows<4>(6);
}

void check_state(const RigidBodyState& x, const RotorThrusts& u) {
  if (!x.finite() || !u.T.allFinite()) throw InvalidInput("non-finite dynamics input");
  if (std::abs(x.q.norm() - 1.0) > 1e-6)
    throw InvalidInput("quaternion norm deviates from unit by more than 1e-6");
}

}  // namespace

Eigen::Matrix<double, 13, 1> quad_dynamics(const RigidBodyState& x, const RotorThrusts& u,
                                           const QuadrotorParams& params) {
  check_state(x, u);
  return dyn_raw(x.flat(), u.T, params);
}

QuadJacobians quad_dynamics_jacobians(const RigidBodyState& x, const RotorThrusts& u,
                                      const QuadrotorParams& params) {
  check_state(x, u);
  QuadJacobians J;
  M13 A;
  B13 B;
  dyn_jac_raw(x.flat(), params, u.total(), A, B);
  J.df_dx = A;
  J.df_du = B;
  return J;
}

RigidBodyState rk4_step(const RigidBodyState& x, const RotorThrusts& u,
                        const QuadrotorParams& params, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("integration step must be positive");
  check_state(x, u);
  return RigidBodyState::from_flat(rk4_raw(x.flat(), u.T, params, dt));
}

StepJacobians rk4_step_jacobians(const RigidBodyState& x, const RotorThrusts& u,
                                 const QuadrotorParams& params, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("integration step must be positive");
  StepJacobians out;
  rk4_jac_raw(x.flat(), u.T, params, dt, out.dx, out.du);
  return out;
}

Eigen::Matrix<double, 6, 1> point_mass_dynamics(const PointMassState& x, const Vec3& a_cmd,
                                                const PointMassParams& params) {
  if (!x.p.allFinite() || !x.v.allFinite() || !a_cmd.allFinite())
    throw InvalidInput("non-finite point mass input");
  if ((a_cmd.cwiseAbs().array() > params.accel_max + 1e-12).any())
    throw InvalidInput("acceleration command exceeds per-axis bound");
  Eigen::Matrix<double, 6, 1> xdot;
  xdot << x.v, a_cmd;
  return xdot;
}

PointMassState point_mass_step(const PointMassState& x, const Vec3& a_cmd, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("integration step must be positive");
  PointMassState out;
  out.p = x.p + x.v * dt + 0.5 * dt * dt * a_cmd;
  out.v = x.v + a_cmd * dt;
  return out;
}

VecX ModelSpec::neutral_input() const {
  if (kind == ModelKind::Quadrotor)
    return RotorThrusts::hover(quad.mass, quad.gravity.norm()).T;
  return Vec3::Zero();
}

void ModelSpec::input_bounds(VecX& lb, VecX& ub) const {
  if (kind == ModelKind::Quadrotor) {
    lb = Vec4::Constant(quad.thrust_min);
    ub = Vec4::Constant(quad.thrust_max);
  } else {
    lb = Vec3::Constant(-point_mass.accel_max);
    ub = Vec3::Constant(point_mass.accel_max);
  }
}

VecX model_step(const ModelSpec& model, const Eigen::Ref<const VecX>& x,
                const Eigen::Ref<const VecX>& u, double dt) {
  if (model.kind == ModelKind::Quadrotor) return rk4_raw(x, u, model.quad, dt);
  PointMassState s;
  s.p = x.segment<3>(0);
  s.v = x.segment<3>(3);
  return point_mass_step(s, u, dt).flat();
}

void model_step_jacobians(const ModelSpec& model, const Eigen::Ref<const VecX>& x,
                          const Eigen::Ref<const VecX>& u, double dt, MatX& dx, MatX& du) {
  if (model.kind == ModelKind::Quadrotor) {
    M13 A;
    B13 B;
    rk4_jac_raw(x, u, model.quad, dt, A, B);
    dx = A;
    du = B;
    return;
  }
  (void)u;
  dx = MatX::Identity(6, 6);
  dx.block<3, 3>(0, 3) = dt * Mat3::Identity();
  du = MatX::Zero(6, 3);
  du.block<3, 3>(0, 0) = 0.5 * dt * dt * Mat3::Identity();
  du.block<3, 3>(3, 0) = dt * Mat3::Identity();
}

}  // namespace swarmtraj
