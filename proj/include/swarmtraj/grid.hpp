#ifndef SWARMTRAJ_GRID_HPP
#define SWARMTRAJ_GRID_HPP

#include "swarmtraj/types.hpp"

namespace swarmtraj {

/// Fixed time grid shared by every drone: N nodes spaced dt apart. Node k
/// is the same instant t_k = k*dt for all vehicles, which is what makes the
/// pairwise constraints well posed.
struct GridSpec {
  int N = 2;
  double dt = 0.03;

  double horizon() const { return (N - 1) * dt; }
  double time_at(int k) const { return k * dt; }

  void validate() const {
    if (N < 2) throw InvalidInput("grid needs at least 2 nodes");
    if (!(dt > 0.0)) throw InvalidInput("grid spacing must be positive");
  }
};

}  // namespace swarmtraj

#endif
