#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "voxnav/core/types.hpp"
#include "voxnav/core/voxel_world.hpp"
#include "voxnav/sim/body.hpp"

namespace voxnav::sim {

/// Pinhole depth camera on the body's front mount.
struct CameraConfig {
  int rows = 32;
  int cols = 48;
  double hfov_deg = 87.0;  // vertical FOV implied by square pixels
  double max_range = 4.0;  // m; rays clip here and depth normalizes by it
};

/// Yaw-aligned local occupancy box: 14 z-levels x 11 x 11 cells of 0.1 m,
/// centered on the body planar position, spanning ground-0.2 m to +1.2 m.
struct LocalMap3D {
  static constexpr int kNz = 14, kNx = 11, kNy = 11;
  std::array<std::uint8_t, kNz * kNx * kNy> cells{};

  std::uint8_t at(int iz, int ix, int iy) const { return cells[(iz * kNx + ix) * kNy + iy]; }
  std::uint8_t& at(int iz, int ix, int iy) { return cells[(iz * kNx + ix) * kNy + iy]; }
};

/// Yaw-aligned elevation window: 31 x 21 cells of 0.1 m with the body at cell
/// (10, 10), extending 2 m ahead, 1 m behind, and 1 m to each side. Values
/// are absolute world z of each column's top surface (terrain or obstacle).
struct LocalMap25D {
  static constexpr int kNx = 31, kNy = 21;
  std::array<float, kNx * kNy> cells{};

  float at(int ix, int iy) const { return cells[ix * kNy + iy]; }
  float& at(int ix, int iy) { return cells[ix * kNy + iy]; }
};

/// Everything a policy may see each tick. Out-of-bounds map cells read as
/// occupied (3D) or the lattice top (2.5D); no policy gets the world pose.
struct ObservationBundle {
  LocalMap3D m3d;
  LocalMap25D m25d;
  Command achieved;  // realized channel values
  Command prev_cmd;  // command issued on the previous tick
  double vz = 0.0;
  std::array<double, 2> omega_xy = {0.0, 0.0};
  std::array<double, 3> goal_rel = {0.0, 0.0, 0.0};  // goal in the body frame
  int visit_count = 0;  // visits to the current 0.5 m cell so far
};

void extract_local_maps(const VoxelWorld& world, const Pose& pose, LocalMap3D& m3d,
                        LocalMap25D& m25d);

/// Depth image (row-major rows x cols) from the camera mounted on the body.
/// Each value is distance along the ray to the first occupied voxel, divided
/// by max_range and clipped to [0, 1]; misses read 1.
std::vector<float> raycast_depth(const VoxelWorld& world, const Pose& pose,
                                 const CameraConfig& camera = {},
                                 const BodyGeometry& geom = {});

/// Assembles the bundle for the current state; goal is a world-frame point.
ObservationBundle make_observation(const VoxelWorld& world, const AgentState& state,
                                   const Command& prev_cmd,
                                   const std::array<double, 3>& goal_world, int visit_count);

}  // namespace voxnav::sim
