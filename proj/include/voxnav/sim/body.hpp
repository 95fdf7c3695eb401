#pragma once

#include <array>

#include "voxnav/core/types.hpp"
#include "voxnav/core/voxel_world.hpp"

namespace voxnav::sim {

/// Rigid box model of the agent's body plus its camera mount.
struct BodyGeometry {
  double length = 0.60;     // body-frame x extent, m
  double width = 0.30;      // body-frame y extent, m
  double thickness = 0.12;  // body-frame z extent, m
  double nominal_h = 0.30;  // standing height of the box center over ground
  std::array<double, 3> camera_mount = {0.25, 0.0, 0.12};  // body frame, m
};

/// Column-major rotation Rz(yaw) * Rx(roll): axes()[j] is body axis j in
/// world coordinates.
std::array<std::array<double, 3>, 3> body_axes(double yaw, double roll);

/// True when the body box centered at (x, y, ground(x, y) + h) with attitude
/// Rz(yaw) * Rx(roll) overlaps any occupied voxel (separating-axis test
/// against each candidate voxel; touching counts as overlap). Voxels outside
/// the lattice read as free.
bool check_collision(const VoxelWorld& world, double x, double y, double yaw, double h,
                     double roll, const BodyGeometry& geom = {});

/// Pose-based convenience overload; uses pose.x/y/yaw with the given posture.
inline bool check_collision(const VoxelWorld& world, const Pose& pose, double h, double roll,
                            const BodyGeometry& geom = {}) {
  return check_collision(world, pose.x, pose.y, pose.yaw, h, roll, geom);
}

/// Reference implementation: densely samples points throughout the body box
/// (default 5 mm pitch) and reports whether any sampled point lands in an
/// occupied voxel. Slower but independent of the separating-axis math; can
/// miss overlaps thinner than the pitch, so disagreements right at a contact
/// boundary are expected.
bool check_collision_sampled(const VoxelWorld& world, double x, double y, double yaw, double h,
                             double roll, const BodyGeometry& geom = {}, double pitch = 0.005);

}  // namespace voxnav::sim
