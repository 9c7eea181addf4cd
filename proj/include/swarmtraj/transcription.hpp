#ifndef SWARMTRAJ_TRANSCRIPTION_HPP
#define SWARMTRAJ_TRANSCRIPTION_HPP

#include "swarmtraj/layout.hpp"
#include "swarmtraj/track.hpp"

namespace swarmtraj {

/// Multiple-shooting defects: for each drone and transition,
/// x_{k+1} - step(x_k, u_k, dt). Zero exactly on trajectories produced by
/// chaining the integrator. Ordered drone-major, node-major, nx rows each.
VecX shooting_defects(const VecX& z, const DecisionLayout& layout, const GridSpec& grid,
                      const ModelSpec& model);

struct GuessOptions {
  // Fraction of the horizon the straight-line guess uses to traverse the
  // whole waypoint path; the remainder holds at the final waypoint.
  double horizon_utilization = 0.6;
  // Deterministic position jitter (meters) applied to interior nodes to
  // break mirror-symmetric instances; 0 disables.
  double position_jitter = 0.0;
  uint64_t seed = 0;
};

/// Straight-line initial guess: positions interpolated along the
/// piecewise-linear waypoint path, finite-difference velocities, identity
/// attitude, zero rates, hover inputs. Progress columns switch at the node
/// where the interpolation passes each waypoint.
VecX initial_guess(const Track& track, const GridSpec& grid, const ModelSpec& model,
                   const DecisionLayout& layout, const GuessOptions& opts = {});

}  // namespace swarmtraj

#endif
