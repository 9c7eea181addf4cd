#ifndef SWARMTRAJ_CONSTRAINTS_HPP
#define SWARMTRAJ_CONSTRAINTS_HPP

#include <optional>
#include <vector>

#include "swarmtraj/grid.hpp"
#include "swarmtraj/track.hpp"
#include "swarmtraj/types.hpp"

namespace swarmtraj {

enum class ConstraintClass {
  Defect,
  QuatNorm,
  Initial,
  Telescoping,
  Sequencing,
  Complementarity,
  Collision,
  ThrustRate,
  Attitude,
};

const char* constraint_class_name(ConstraintClass c);

// --- waypoint progress -------------------------------------------------------

struct ProgressResiduals {
  VecX telescoping;      // lambda_{k+1} - lambda_k + mu_k, per (k, j)
  VecX complementarity;  // mu_k * (dist^2_k - nu_k), per (k, j)
  VecX terminal;         // lambda_{N-1, j}
  VecX sequencing;       // lambda_k^{j+1} - lambda_k^j >= 0, per (k, j<W-1)
};

/// Progress constraint residuals for one drone. `positions` is 3 x N;
/// lambda is N x W; mu and nu are (N-1) x W. When `rest_velocities` is
/// given, the final waypoint's squared distance also includes |v|^2, which
/// pins the passage to a near-rest state.
ProgressResiduals progress_constraints(const MatX& positions, const MatX& lambda, const MatX& mu,
                                       const MatX& nu, const std::vector<Vec3>& waypoints,
                                       double tol,
                                       const std::optional<MatX>& rest_velocities = std::nullopt);

/// Squared waypoint miss for the complementarity term, optionally
/// velocity-augmented for rest arrivals.
inline double pass_sq_dist(const Vec3& p, const Vec3& wp) { return (p - wp).squaredNorm(); }

// --- collision gate ----------------------------------------------------------

// Smooth clip of min(1, s): linear below 1-h, constant above 1+h, quadratic
// blend between. Progress sums are near-binary at solutions, so the blend
// region is rarely active, but it keeps the constraint differentiable.
constexpr double kGateBlend = 0.01;

inline double collision_gate(double s) {
  if (s <= 1.0 - kGateBlend) return s;
  if (s >= 1.0 + kGateBlend) return 1.0;
  const double d = 1.0 + kGateBlend - s;
  return 1.0 - d * d / (4.0 * kGateBlend);
}

inline double collision_gate_deriv(double s) {
  if (s <= 1.0 - kGateBlend) return 1.0;
  if (s >= 1.0 + kGateBlend) return 0.0;
  return (1.0 + kGateBlend - s) / (2.0 * kGateBlend);
}

struct CollisionResiduals {
  // For every unordered pair and node k >= first_node(pair):
  // |E (p_i - p_r)|^2 - delta * gate(lambda_i^W + lambda_r^W) >= 0.
  VecX residuals;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> first_node;  // per pair, start of enforcement
};

/// Pairwise collision residuals over synchronized nodes. `positions[i]` is
/// 3 x N; `last_lambda[i]` the final-waypoint lambda column (length N) used
/// as the activity gate. Pairs whose starts coincide get their first
/// `exempt_nodes(pair)` nodes skipped.
CollisionResiduals collision_constraints(const std::vector<MatX>& positions,
                                         const CollisionSpec& spec,
                                         const std::vector<VecX>& last_lambda,
                                         const GridSpec& grid);

/// Number of leading nodes to exempt for a coincident-start pair: the time a
/// vehicle needs to build the required separation from a standstill, rounded
/// up with margin. Explicit settings in the spec override this.
int auto_exempt_nodes(const CollisionSpec& spec, const GridSpec& grid, double accel_ref);

/// Resolved per-pair enforcement start nodes for a given track.
std::vector<int> collision_first_nodes(const Track& track, const CollisionSpec& spec,
                                       const GridSpec& grid, double accel_ref);

// --- actuator / attitude / boundary -------------------------------------------

struct ActuatorResiduals {
  VecX lower;  // Ts - T_min >= 0, per rotor per node
  VecX upper;  // T_max - Ts >= 0
  VecX rate;   // Tdot_max*dt - |T_{k+1} - T_k| >= 0, per rotor per transition
};

ActuatorResiduals actuator_bounds(const MatX& inputs, const QuadrotorParams& params, double dt);

struct AttitudeResiduals {
  VecX residuals;                 // per node: [tilt-|roll|, tilt-|pitch|, yaw_max-|yaw|]
  std::vector<int> degenerate_nodes;  // gimbal-proximal nodes, values still emitted
};

AttitudeResiduals attitude_bounds(const MatX& quaternions, const QuadrotorParams& params);

/// Node-0 equality residuals: x_0 - start, nx rows per drone.
VecX boundary_constraints(const std::vector<VecX>& node0_states, const Track& track,
                          const ModelSpec& model);

}  // namespace swarmtraj

#endif
