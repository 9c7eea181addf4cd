#ifndef SWARMTRAJ_LAYOUT_HPP
#define SWARMTRAJ_LAYOUT_HPP

#include <vector>

#include "swarmtraj/grid.hpp"
#include "swarmtraj/quad_model.hpp"
#include "swarmtraj/types.hpp"

namespace swarmtraj {

/// Addressing of the flat decision vector. Drone-major; within a drone the
/// blocks are states (node-major), inputs (node-major), then the progress
/// variables lambda (N x W, node-major), mu and nu ((N-1) x W).
///
/// lambda[k][j] = 1 while waypoint j is still ahead at node k, 0 once passed.
/// mu[k][j] is the progress pulse on the transition k -> k+1; nu[k][j] the
/// squared-distance slack for that transition.
struct DecisionLayout {
  int num_drones = 0;
  int N = 0;
  int nx = 0;
  int nu = 0;
  std::vector<int> waypoints;      // W_i per drone
  std::vector<int> drone_offset;   // start of each drone's block
  std::vector<int> lambda_offset;  // relative to drone block start
  std::vector<int> mu_offset;
  std::vector<int> nu_offset;
  int total = 0;

  int state_index(int i, int k, int c) const { return drone_offset[i] + k * nx + c; }
  int input_index(int i, int k, int c) const { return drone_offset[i] + N * nx + k * nu + c; }
  int lambda_index(int i, int k, int j) const {
    return drone_offset[i] + lambda_offset[i] + k * waypoints[i] + j;
  }
  int mu_index(int i, int k, int j) const {
    return drone_offset[i] + mu_offset[i] + k * waypoints[i] + j;
  }
  int nu_index(int i, int k, int j) const {
    return drone_offset[i] + nu_offset[i] + k * waypoints[i] + j;
  }

  Eigen::Ref<const VecX> state(const VecX& z, int i, int k) const {
    return z.segment(state_index(i, k, 0), nx);
  }
  Eigen::Ref<const VecX> input(const VecX& z, int i, int k) const {
    return z.segment(input_index(i, k, 0), nu);
  }
  Eigen::Ref<VecX> state(VecX& z, int i, int k) const {
    return z.segment(state_index(i, k, 0), nx);
  }
  Eigen::Ref<VecX> input(VecX& z, int i, int k) const {
    return z.segment(input_index(i, k, 0), nu);
  }
  Vec3 position(const VecX& z, int i, int k) const {
    return z.segment<3>(state_index(i, k, 0));
  }
};

/// Structured view of one drone's slice of the decision vector.
struct DroneVariables {
  MatX states;   // nx x N
  MatX inputs;   // nu x N
  MatX lambda;   // N x W
  MatX mu;       // (N-1) x W
  MatX nu;       // (N-1) x W
};

DecisionLayout layout_variables(int num_drones, const GridSpec& grid,
                                const std::vector<int>& waypoints_per_drone,
                                const ModelSpec& model);

std::vector<DroneVariables> unpack(const VecX& z, const DecisionLayout& layout);
VecX pack(const std::vector<DroneVariables>& vars, const DecisionLayout& layout);

}  // namespace swarmtraj

#endif
