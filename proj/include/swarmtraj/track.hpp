#ifndef SWARMTRAJ_TRACK_HPP
#define SWARMTRAJ_TRACK_HPP

#include <vector>

#include "swarmtraj/quad_model.hpp"
#include "swarmtraj/types.hpp"

namespace swarmtraj {

/// One drone's assignment: where it starts (at rest) and the ordered
/// waypoints it must pass.
struct DroneTrack {
  RigidBodyState start;           // at rest; quaternion must be unit
  std::vector<Vec3> waypoints;    // ordered, world frame
  bool arrive_at_rest = false;    // final waypoint also requires |v| inside the tolerance ball

  double path_length() const {
    double L = 0.0;
    Vec3 prev = start.p;
    for (const Vec3& w : waypoints) {
      L += (w - prev).norm();
      prev = w;
    }
    return L;
  }
};

struct Track {
  std::vector<DroneTrack> drones;
  double tolerance = 0.3;  // waypoint pass radius, meters

  int drone_count() const { return static_cast<int>(drones.size()); }
  int waypoint_count(int i) const { return static_cast<int>(drones[i].waypoints.size()); }

  void validate() const {
    if (drones.empty()) throw InvalidInput("track needs at least one drone");
    if (!(tolerance > 0.0)) throw InvalidInput("waypoint tolerance must be positive");
    for (const DroneTrack& d : drones) {
      if (d.waypoints.empty()) throw InvalidInput("each drone needs at least one waypoint");
      if (std::abs(d.start.q.norm() - 1.0) > 1e-9)
        throw InvalidInput("start quaternion must be unit");
      if (!d.start.finite()) throw InvalidInput("start state must be finite");
      for (const Vec3& w : d.waypoints)
        if (!w.allFinite()) throw InvalidInput("waypoints must be finite");
    }
  }
};

/// Pairwise separation requirement: |E (p_i - p_r)|^2 >= delta at every
/// shared node while the pair is racing. The default E shrinks vertical
/// offsets to penalize flying directly above another vehicle.
struct CollisionSpec {
  Vec3 ellipsoid_diag = Vec3(1.0, 1.0, 1.0 / 3.0);
  double delta = 0.25;
  // Pairs that start closer than the threshold get their constraint enabled
  // only from node `coincident_start_exempt_nodes` on; from a standstill no
  // control can produce the required separation instantly. <0 means pick
  // automatically from the reachable-separation time.
  bool exempt_coincident_starts = true;
  int coincident_start_exempt_nodes = -1;

  double scaled_sq_dist(const Vec3& dp) const {
    const Vec3 s = ellipsoid_diag.cwiseProduct(dp);
    return s.squaredNorm();
  }

  void validate() const {
    if ((ellipsoid_diag.array() <= 0.0).any())
      throw InvalidInput("collision ellipsoid diagonal must be positive");
    if (!(delta > 0.0)) throw InvalidInput("collision threshold must be positive");
  }
};

}  // namespace swarmtraj

#endif
