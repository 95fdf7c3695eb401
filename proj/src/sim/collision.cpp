#include <algorithm>
#include <cmath>

#include "voxnav/sim/body.hpp"

namespace voxnav::sim {

std::array<std::array<double, 3>, 3> body_axes(double yaw, double roll) {
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  const double cr = std::cos(roll), sr = std::sin(roll);
  return {{
      {cy, sy, 0.0},              // body x
      {-sy * cr, cy * cr, sr},    // body y
      {sy * sr, -cy * sr, cr},    // body z
  }};
}

namespace {

/// Separating-axis overlap test between an axis-aligned cube (half extent ah,
/// center t away from the box center) and an oriented box with half extents b
/// and axes u (body axis j in world coordinates).
bool obb_overlaps_cube(const std::array<double, 3>& t, double ah,
                       const std::array<std::array<double, 3>, 3>& u,
                       const std::array<double, 3>& b) {
  // R[i][j]: world axis i component of body axis j.
  double R[3][3], A[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      R[i][j] = u[j][i];
      A[i][j] = std::abs(R[i][j]) + 1e-9;
    }
  // World (cube) axes.
  for (int i = 0; i < 3; ++i) {
    const double rb = b[0] * A[i][0] + b[1] * A[i][1] + b[2] * A[i][2];
    if (std::abs(t[i]) > ah + rb) return false;
  }
  // Body axes.
  for (int j = 0; j < 3; ++j) {
    const double tj = t[0] * R[0][j] + t[1] * R[1][j] + t[2] * R[2][j];
    const double ra = ah * (A[0][j] + A[1][j] + A[2][j]);
    if (std::abs(tj) > ra + b[j]) return false;
  }
  // Cross products of axes.
  for (int i = 0; i < 3; ++i) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    for (int j = 0; j < 3; ++j) {
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      const double ra = ah * (A[i1][j] + A[i2][j]);
      const double rb = b[j1] * A[i][j2] + b[j2] * A[i][j1];
      const double tax = t[i2] * R[i1][j] - t[i1] * R[i2][j];
      if (std::abs(tax) > ra + rb) return false;
    }
  }
  return true;
}

}  // namespace

bool check_collision(const VoxelWorld& world, double x, double y, double yaw, double h,
                     double roll, const BodyGeometry& geom) {
  const auto u = body_axes(yaw, roll);
  const std::array<double, 3> b = {geom.length / 2, geom.width / 2, geom.thickness / 2};
  const double cz = world.ground_at(x, y) + h;
  const std::array<double, 3> c = {x, y, cz};

  // World-space AABB of the oriented body box.
  std::array<double, 3> r;
  for (int i = 0; i < 3; ++i)
    r[i] = b[0] * std::abs(u[0][i]) + b[1] * std::abs(u[1][i]) + b[2] * std::abs(u[2][i]);

  const double res = world.resolution();
  const int ix0 = std::max(0, world.index_x(c[0] - r[0]));
  const int ix1 = std::min(world.nx() - 1, world.index_x(c[0] + r[0]));
  const int iy0 = std::max(0, world.index_y(c[1] - r[1]));
  const int iy1 = std::min(world.ny() - 1, world.index_y(c[1] + r[1]));
  const int iz0 = std::max(0, world.index_z(c[2] - r[2]));
  const int iz1 = std::min(world.nz() - 1, world.index_z(c[2] + r[2]));

  const double ah = res / 2;
  for (int ix = ix0; ix <= ix1; ++ix) {
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int iz = iz0; iz <= iz1; ++iz) {
        if (!world.occupied(ix, iy, iz)) continue;
        const std::array<double, 3> t = {world.center_x(ix) - c[0], world.center_y(iy) - c[1],
                                         world.center_z(iz) - c[2]};
        if (obb_overlaps_cube(t, ah, u, b)) return true;
      }
    }
  }
  return false;
}

bool check_collision_sampled(const VoxelWorld& world, double x, double y, double yaw, double h,
                             double roll, const BodyGeometry& geom, double pitch) {
  const auto u = body_axes(yaw, roll);
  const double cz = world.ground_at(x, y) + h;
  const std::array<double, 3> half = {geom.length / 2, geom.width / 2, geom.thickness / 2};
  std::array<int, 3> steps;
  for (int i = 0; i < 3; ++i) steps[i] = static_cast<int>(std::floor(2 * half[i] / pitch)) + 1;

  // The lattice walk runs in cell units so each point needs only one
  // multiply-add and a floor per axis. kBias makes plain int truncation act
  // as floor for every coordinate this scan can produce.
  const double inv_res = 1.0 / world.resolution();
  const double kBias = 1048576.0;
  const int kIBias = 1048576;
  const int nx = world.nx(), ny = world.ny(), nz = world.nz();
  std::array<std::vector<double>, 3> offsets;
  for (int i = 0; i < 3; ++i) {
    offsets[i].resize(steps[i] + 1);
    for (int k = 0; k <= steps[i]; ++k) {
      offsets[i][k] = (-half[i] + 2 * half[i] * k / steps[i]) * inv_res;
    }
  }
  const std::array<double, 3> base = {(x - world.origin_x()) * inv_res,
                                      (y - world.origin_y()) * inv_res,
                                      (cz - world.origin_z()) * inv_res};

  for (int a = 0; a <= steps[0]; ++a) {
    const double pa = offsets[0][a];
    const double ax = base[0] + u[0][0] * pa, ay = base[1] + u[0][1] * pa,
                 az = base[2] + u[0][2] * pa;
    for (int b = 0; b <= steps[1]; ++b) {
      const double pb = offsets[1][b];
      const double bx = ax + u[1][0] * pb + kBias, by = ay + u[1][1] * pb + kBias,
                   bz = az + u[1][2] * pb + kBias;
      for (int cc = 0; cc <= steps[2]; ++cc) {
        const double pc = offsets[2][cc];
        const int ix = static_cast<int>(bx + u[2][0] * pc) - kIBias;
        const int iy = static_cast<int>(by + u[2][1] * pc) - kIBias;
        const int iz = static_cast<int>(bz + u[2][2] * pc) - kIBias;
        if (ix < 0 || ix >= nx || iy < 0 || iy >= ny || iz < 0 || iz >= nz) continue;
        if (world.occupied(ix, iy, iz)) return true;
      }
    }
  }
  return false;
}

}  // namespace voxnav::sim
