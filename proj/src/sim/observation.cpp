#include <cmath>
#include <limits>

#include "voxnav/core/angles.hpp"
#include "voxnav/sim/observation.hpp"

namespace voxnav::sim {

namespace {
// Map samples land exactly on voxel boundaries whenever the body sits on one;
// a sub-micron nudge in the body frame keeps which-side rounding
// deterministic and consistent under body rotation.
constexpr double kSampleNudge = 1e-6;
}  // namespace

void extract_local_maps(const VoxelWorld& world, const Pose& pose, LocalMap3D& m3d,
                        LocalMap25D& m25d) {
  const double res = world.resolution();
  const double g = world.ground_at(pose.x, pose.y);
  const double cy = std::cos(pose.yaw), sy = std::sin(pose.yaw);

  for (int ix = 0; ix < LocalMap3D::kNx; ++ix) {
    for (int iy = 0; iy < LocalMap3D::kNy; ++iy) {
      const double bx = (ix - LocalMap3D::kNx / 2) * res + kSampleNudge;
      const double by = (iy - LocalMap3D::kNy / 2) * res + kSampleNudge;
      const double px = pose.x + bx * cy - by * sy;
      const double py = pose.y + bx * sy + by * cy;
      const int cxi = world.index_x(px), cyi = world.index_y(py);
      const bool planar_oob = cxi < 0 || cxi >= world.nx() || cyi < 0 || cyi >= world.ny();
      for (int iz = 0; iz < LocalMap3D::kNz; ++iz) {
        const double pz = g - 0.2 + (iz + 0.5) * res;
        const int czi = world.index_z(pz);
        std::uint8_t value;
        if (planar_oob || czi < 0 || czi >= world.nz()) {
          value = 1;  // beyond the lattice reads occupied
        } else {
          value = world.occupied(cxi, cyi, czi) ? 1 : 0;
        }
        m3d.at(iz, ix, iy) = value;
      }
    }
  }

  for (int ix = 0; ix < LocalMap25D::kNx; ++ix) {
    for (int iy = 0; iy < LocalMap25D::kNy; ++iy) {
      const double bx = (ix - 10) * res + kSampleNudge;  // 2 m ahead, 1 m behind
      const double by = (iy - 10) * res + kSampleNudge;
      const double px = pose.x + bx * cy - by * sy;
      const double py = pose.y + bx * sy + by * cy;
      const int cxi = world.index_x(px), cyi = world.index_y(py);
      float value;
      if (cxi < 0 || cxi >= world.nx() || cyi < 0 || cyi >= world.ny()) {
        value = static_cast<float>(world.top_z());
      } else {
        value = static_cast<float>(world.column_top(cxi, cyi));
      }
      m25d.at(ix, iy) = value;
    }
  }
}

std::vector<float> raycast_depth(const VoxelWorld& world, const Pose& pose,
                                 const CameraConfig& camera, const BodyGeometry& geom) {
  const auto u = body_axes(pose.yaw, pose.roll);
  const auto& m = geom.camera_mount;
  const std::array<double, 3> o = {
      pose.x + u[0][0] * m[0] + u[1][0] * m[1] + u[2][0] * m[2],
      pose.y + u[0][1] * m[0] + u[1][1] * m[1] + u[2][1] * m[2],
      pose.z + u[0][2] * m[0] + u[1][2] * m[1] + u[2][2] * m[2],
  };

  const double res = world.resolution();
  const std::array<double, 3> lo = {world.origin_x(), world.origin_y(), world.origin_z()};
  const std::array<double, 3> hi = {lo[0] + world.nx() * res, lo[1] + world.ny() * res,
                                    lo[2] + world.nz() * res};
  const std::array<int, 3> dims = {world.nx(), world.ny(), world.nz()};

  const double f = (camera.cols / 2.0) / std::tan(camera.hfov_deg * kPi / 180.0 / 2.0);
  std::vector<float> depth(static_cast<std::size_t>(camera.rows) * camera.cols, 1.0f);

  for (int r = 0; r < camera.rows; ++r) {
    for (int cpix = 0; cpix < camera.cols; ++cpix) {
      const double px = (cpix + 0.5 - camera.cols / 2.0) / f;  // image right
      const double pv = (r + 0.5 - camera.rows / 2.0) / f;     // image down
      // Body frame: x forward, y left, z up.
      std::array<double, 3> db = {1.0, -px, -pv};
      const double norm = std::sqrt(db[0] * db[0] + db[1] * db[1] + db[2] * db[2]);
      for (double& v : db) v /= norm;
      std::array<double, 3> d;
      for (int i = 0; i < 3; ++i) d[i] = u[0][i] * db[0] + u[1][i] * db[1] + u[2][i] * db[2];

      // Clip the ray to the lattice box.
      double t0 = 0.0, t1 = camera.max_range;
      bool outside = false;
      for (int i = 0; i < 3 && !outside; ++i) {
        if (std::abs(d[i]) < 1e-12) {
          if (o[i] < lo[i] || o[i] > hi[i]) outside = true;
          continue;
        }
        double ta = (lo[i] - o[i]) / d[i];
        double tb = (hi[i] - o[i]) / d[i];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
      }
      if (outside || t0 > t1) continue;  // never inside the lattice: miss

      // Walk the lattice (Amanatides-Woo traversal).
      const double eps = 1e-9;
      std::array<int, 3> cell, stepv;
      std::array<double, 3> tmax, tdelta;
      for (int i = 0; i < 3; ++i) {
        const double s = o[i] + d[i] * (t0 + eps);
        cell[i] = static_cast<int>(std::floor((s - lo[i]) / res));
        cell[i] = std::max(0, std::min(dims[i] - 1, cell[i]));
        if (d[i] > eps) {
          stepv[i] = 1;
          tmax[i] = (lo[i] + (cell[i] + 1) * res - o[i]) / d[i];
          tdelta[i] = res / d[i];
        } else if (d[i] < -eps) {
          stepv[i] = -1;
          tmax[i] = (lo[i] + cell[i] * res - o[i]) / d[i];
          tdelta[i] = res / -d[i];
        } else {
          stepv[i] = 0;
          tmax[i] = std::numeric_limits<double>::infinity();
          tdelta[i] = std::numeric_limits<double>::infinity();
        }
      }

      double t_cur = t0;
      double hit = -1.0;
      while (t_cur <= t1) {
        if (world.occupied(cell[0], cell[1], cell[2])) {
          hit = t_cur;
          break;
        }
        int axis = 0;
        if (tmax[1] < tmax[axis]) axis = 1;
        if (tmax[2] < tmax[axis]) axis = 2;
        t_cur = tmax[axis];
        cell[axis] += stepv[axis];
        if (cell[axis] < 0 || cell[axis] >= dims[axis]) break;
        tmax[axis] += tdelta[axis];
      }
      if (hit >= 0.0 && hit <= camera.max_range) {
        depth[static_cast<std::size_t>(r) * camera.cols + cpix] =
            static_cast<float>(hit / camera.max_range);
      }
    }
  }
  return depth;
}

ObservationBundle make_observation(const VoxelWorld& world, const AgentState& state,
                                   const Command& prev_cmd,
                                   const std::array<double, 3>& goal_world, int visit_count) {
  ObservationBundle obs;
  extract_local_maps(world, state.pose, obs.m3d, obs.m25d);
  obs.achieved = state.achieved;
  obs.prev_cmd = prev_cmd;
  obs.vz = state.vz;
  obs.omega_xy = state.omega_xy;
  const double cy = std::cos(state.pose.yaw), sy = std::sin(state.pose.yaw);
  const double gx = goal_world[0] - state.pose.x;
  const double gy = goal_world[1] - state.pose.y;
  // Yaw-aligned body frame; roll is not applied to the goal vector.
  obs.goal_rel = {gx * cy + gy * sy, -gx * sy + gy * cy, goal_world[2] - state.pose.z};
  obs.visit_count = visit_count;
  return obs;
}

}  // namespace voxnav::sim
