#pragma once

// Internal helpers for reading the local observation maps. Not installed.

#include <algorithm>
#include <cmath>

#include "voxnav/sim/observation.hpp"

namespace voxnav::policy::detail {

/// A column whose top rises more than this above the local floor cannot be
/// driven over (matches the tallest step the kinematic body clears upright).
inline constexpr double kStepLimit = 0.2;  // m

inline constexpr double kCell = 0.1;  // m, local-map cell edge

/// Estimated floor height under the body: the lowest column top in the 3x3
/// block around the body cell. More robust than the body cell alone when the
/// body straddles a ledge or walks beneath a shelf.
inline double ground_ref(const sim::LocalMap25D& m) {
  float ref = m.at(10, 10);
  for (int ix = 9; ix <= 11; ++ix) {
    for (int iy = 9; iy <= 11; ++iy) {
      ref = std::min(ref, m.at(ix, iy));
    }
  }
  return ref;
}

/// True when the column at (ix, iy) obstructs upright travel.
inline bool blocked_cell(const sim::LocalMap25D& m, int ix, int iy, double ref) {
  return m.at(ix, iy) - ref > kStepLimit;
}

/// Body-frame cell-center coordinates of elevation-window cell (ix, iy).
inline double cell_bx(int ix) { return (ix - 10) * kCell; }
inline double cell_by(int iy) { return (iy - 10) * kCell; }

/// Obstruction anywhere in the frontal corridor (|lateral| <= half_cells
/// cells) out to depth_cells ahead of the body.
inline bool frontal_blocked(const sim::LocalMap25D& m, double ref, int depth_cells,
                            int half_cells) {
  for (int ix = 11; ix <= std::min(10 + depth_cells, sim::LocalMap25D::kNx - 1); ++ix) {
    for (int iy = 10 - half_cells; iy <= 10 + half_cells; ++iy) {
      if (blocked_cell(m, ix, iy, ref)) return true;
    }
  }
  return false;
}

struct NearestObstruction {
  double dist = 1e9;  // planar distance; 1e9 when the window shows nothing
  double bx = 0.0;    // body-frame offset of the nearest obstructed cell
  double by = 0.0;
};

/// Nearest obstructed cell anywhere in the elevation window.
inline NearestObstruction nearest_obstruction(const sim::LocalMap25D& m, double ref) {
  NearestObstruction best;
  for (int ix = 0; ix < sim::LocalMap25D::kNx; ++ix) {
    for (int iy = 0; iy < sim::LocalMap25D::kNy; ++iy) {
      if (ix == 10 && iy == 10) continue;
      if (!blocked_cell(m, ix, iy, ref)) continue;
      const double bx = cell_bx(ix), by = cell_by(iy);
      const double d = std::hypot(bx, by);
      if (d < best.dist) best = {d, bx, by};
    }
  }
  return best;
}

/// Distance to the nearest obstruction on one side of the body (positive
/// lateral offsets on the left, negative on the right), over the slice from
/// 0.4 m behind to 0.6 m ahead. Cells nearly dead ahead (|lateral| < 0.2 m)
/// are excluded so a frontal wall does not read as a side wall.
inline double side_distance(const sim::LocalMap25D& m, double ref, int side_sign) {
  double best = 1e9;
  for (int ix = 6; ix <= 16; ++ix) {
    for (int k = 2; k <= 10; ++k) {
      int iy = 10 + side_sign * k;
      if (!blocked_cell(m, ix, iy, ref)) continue;
      best = std::min(best, std::hypot(cell_bx(ix), k * kCell));
    }
  }
  return best;
}

}  // namespace voxnav::policy::detail
