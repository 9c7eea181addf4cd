#include "swarmtraj/transcription.hpp"

#include <random>

namespace swarmtraj {

DecisionLayout layout_variables(int num_drones, const GridSpec& grid,
                                const std::vector<int>& waypoints_per_drone,
                                const ModelSpec& model) {
  grid.validate();
  if (num_drones < 1) throw InvalidInput("need at least one drone");
  if (static_cast<int>(waypoints_per_drone.size()) != num_drones)
    throw InvalidInput("waypoint counts must match drone count");
  for (int w : waypoints_per_drone)
    if (w < 1) throw InvalidInput("each drone needs at least one waypoint");

  DecisionLayout L;
  L.num_drones = num_drones;
  L.N = grid.N;
  L.nx = model.nx();
  L.nu = model.nu();
  L.waypoints = waypoints_per_drone;
  L.drone_offset.resize(num_drones);
  L.lambda_offset.resize(num_drones);
  L.mu_offset.resize(num_drones);
  L.nu_offset.resize(num_drones);

  int off = 0;
  for (int i = 0; i < num_drones; ++i) {
    const int W = waypoints_per_drone[i];
    L.drone_offset[i] = off;
    L.lambda_offset[i] = grid.N * (L.nx + L.nu);
    L.mu_offset[i] = L.lambda_offset[i] + grid.N * W;
    L.nu_offset[i] = L.mu_offset[i] + (grid.N - 1) * W;
    off += L.nu_offset[i] + (grid.N - 1) * W;
  }
  L.total = off;
  return L;
}

std::vector<DroneVariables> unpack(const VecX& z, const DecisionLayout& layout) {
  if (z.size() != layout.total) throw InvalidInput("decision vector size mismatch");
  std::vector<DroneVariables> out(layout.num_drones);
  for (int i = 0; i < layout.num_drones; ++i) {
    const int N = layout.N, W = layout.waypoints[i];
    DroneVariables& d = out[i];
    d.states.resize(layout.nx, N);
    d.inputs.resize(layout.nu, N);
    d.lambda.resize(N, W);
    d.mu.resize(N - 1, W);
    d.nu.resize(N - 1, W);
    for (int k = 0; k < N; ++k) {
      d.states.col(k) = layout.state(z, i, k);
      d.inputs.col(k) = layout.input(z, i, k);
      for (int j = 0; j < W; ++j) d.lambda(k, j) = z(layout.lambda_index(i, k, j));
    }
    for (int k = 0; k + 1 < N; ++k)
      for (int j = 0; j < W; ++j) {
        d.mu(k, j) = z(layout.mu_index(i, k, j));
        d.nu(k, j) = z(layout.nu_index(i, k, j));
      }
  }
  return out;
}

VecX pack(const std::vector<DroneVariables>& vars, const DecisionLayout& layout) {
  if (static_cast<int>(vars.size()) != layout.num_drones)
    throw InvalidInput("drone count mismatch in pack");
  VecX z = VecX::Zero(layout.total);
  for (int i = 0; i < layout.num_drones; ++i) {
    const int N = layout.N, W = layout.waypoints[i];
    const DroneVariables& d = vars[i];
    for (int k = 0; k < N; ++k) {
      layout.state(z, i, k) = d.states.col(k);
      layout.input(z, i, k) = d.inputs.col(k);
      for (int j = 0; j < W; ++j) z(layout.lambda_index(i, k, j)) = d.lambda(k, j);
    }
    for (int k = 0; k + 1 < N; ++k)
      for (int j = 0; j < W; ++j) {
        z(layout.mu_index(i, k, j)) = d.mu(k, j);
        z(layout.nu_index(i, k, j)) = d.nu(k, j);
      }
  }
  return z;
}

VecX shooting_defects(const VecX& z, const DecisionLayout& layout, const GridSpec& grid,
                      const ModelSpec& model) {
  if (!z.allFinite()) throw InvalidInput("non-finite decision vector in defect evaluation");
  VecX r(layout.num_drones * (grid.N - 1) * layout.nx);
  int row = 0;
  for (int i = 0; i < layout.num_drones; ++i) {
    for (int k = 0; k + 1 < grid.N; ++k) {
      const VecX next = model_step(model, layout.state(z, i, k), layout.input(z, i, k), grid.dt);
      r.segment(row, layout.nx) = layout.state(z, i, k + 1) - next;
      row += layout.nx;
    }
  }
  return r;
}

namespace {

// Arc-length parametrization of start -> w1 -> ... -> wW.
struct PathInterp {
  std::vector<Vec3> pts;
  std::vector<double> cum;  // cumulative length at each point
  double total = 0.0;

  explicit PathInterp(const DroneTrack& t) {
    pts.push_back(t.start.p);
    for (const Vec3& w : t.waypoints) pts.push_back(w);
    cum.resize(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i) {
      cum[i] = cum[i - 1] + (pts[i] - pts[i - 1]).norm();
    }
    total = cum.back();
  }

  Vec3 at(double s) const {
    if (total <= 0.0) return pts.front();
    s = std::clamp(s, 0.0, total);
    size_t i = 1;
    while (i + 1 < pts.size() && cum[i] < s) ++i;
    const double seg = cum[i] - cum[i - 1];
    if (seg <= 1e-12) return pts[i];
    const double a = (s - cum[i - 1]) / seg;
    return (1.0 - a) * pts[i - 1] + a * pts[i];
  }
};

}  // namespace

VecX initial_guess(const Track& track, const GridSpec& grid, const ModelSpec& model,
                   const DecisionLayout& layout, const GuessOptions& opts) {
  track.validate();
  const int N = grid.N;
  VecX z = VecX::Zero(layout.total);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  const VecX u0 = model.neutral_input();
  const int travel_nodes = std::max(1, static_cast<int>(opts.horizon_utilization * (N - 1)));

  for (int i = 0; i < track.drone_count(); ++i) {
    const DroneTrack& dtrack = track.drones[i];
    PathInterp path(dtrack);
    const int W = layout.waypoints[i];

    // Positions along the path, then velocities by central differences.
    std::vector<Vec3> pos(N);
    for (int k = 0; k < N; ++k) {
      const double frac = std::min(1.0, static_cast<double>(k) / travel_nodes);
      pos[k] = path.at(frac * path.total);
    }
    if (opts.position_jitter > 0.0) {
      for (int k = 1; k + 1 < N; ++k) {
        const Vec3 jit(unit(rng), unit(rng), unit(rng));
        pos[k] += opts.position_jitter * jit;
      }
    }
    for (int k = 0; k < N; ++k) {
      Vec3 vel;
      if (k == 0 || k == N - 1)
        vel = Vec3::Zero();  // rest at the start, settled at the horizon end
      else
        vel = (pos[k + 1] - pos[k - 1]) / (2.0 * grid.dt);

      auto x = layout.state(z, i, k);
      x.segment<3>(0) = pos[k];
      x.segment<3>(3) = vel;
      if (model.has_quaternion()) {
        x.segment<4>(6) = dtrack.start.q;
        x.segment<3>(10).setZero();
      }
      layout.input(z, i, k) = u0;
    }

    // Progress schedule: pass waypoint j at the node where the interpolation
    // reaches its cumulative path fraction.
    const double tol2 = track.tolerance * track.tolerance;
    int prev_pass = 0;
    for (int j = 0; j < W; ++j) {
      const double frac = path.total > 0.0 ? path.cum[j + 1] / path.total : 0.0;
      int pass = static_cast<int>(std::ceil(frac * travel_nodes));
      pass = std::clamp(pass, prev_pass + 1, N - 1);
      prev_pass = pass;
      for (int k = 0; k < N; ++k)
        z(layout.lambda_index(i, k, j)) = (k < pass) ? 1.0 : 0.0;
      z(layout.mu_index(i, pass - 1, j)) = 1.0;
      for (int k = 0; k + 1 < N; ++k) z(layout.nu_index(i, k, j)) = tol2;
    }
  }
  return z;
}

}  // namespace swarmtraj
