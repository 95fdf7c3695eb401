#include "voxnav/policy/reactive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sensing.hpp"

namespace voxnav::policy {
namespace {

constexpr double kCellWeight = 0.05;   // per-cell repulsion weight (many cells sum)
constexpr double kRepulseRange = 2.0;  // m, cells beyond this exert no push
constexpr double kWallCeiling = 0.15;  // m, columns blocked below this are walls,
                                       // not crouchable ceilings

double clamp_nonneg(double v) { return v < 0.0 ? 0.0 : v; }

/// Lowest overhead obstruction in the forward corridor of the 3-D window,
/// measured above the local floor. Walls (blocked at ground level) are left
/// to the planar field; only genuine ceilings count.
double forward_ceiling(const sim::LocalMap3D& m) {
  double best = 10.0;
  for (int ix = 6; ix <= 10; ++ix) {
    for (int iy = 4; iy <= 6; ++iy) {
      for (int iz = 2; iz < sim::LocalMap3D::kNz; ++iz) {
        if (!m.at(iz, ix, iy)) continue;
        const double c = (iz - 2) * detail::kCell;
        if (c >= kWallCeiling) best = std::min(best, c);
        break;
      }
    }
  }
  return best;
}

/// Narrowest bounded lateral opening just ahead at body level: for each
/// near-ground row of the forward columns, the contiguous free span through
/// the body's lateral center, counted only when walls bound it on both sides.
double forward_gap(const sim::LocalMap3D& m) {
  double best = 10.0;
  for (int ix = 6; ix <= 8; ++ix) {
    for (int iz = 2; iz <= 4; ++iz) {
      if (m.at(iz, ix, 5)) continue;  // centerline itself blocked: not an opening
      int lo = 5, hi = 5;
      while (lo - 1 >= 0 && !m.at(iz, ix, lo - 1)) --lo;
      while (hi + 1 < sim::LocalMap3D::kNy && !m.at(iz, ix, hi + 1)) ++hi;
      const bool bounded = lo > 0 && hi < sim::LocalMap3D::kNy - 1;
      if (bounded) best = std::min(best, (hi - lo + 1) * detail::kCell);
    }
  }
  return best;
}

}  // namespace

ReactiveParams ReactiveParams::from_vector(std::span<const double> v) {
  if (v.size() != kDim) throw std::invalid_argument("ReactiveParams: expected 6 values");
  ReactiveParams p;
  p.attract_gain = clamp_nonneg(v[0]);
  p.repulse_gain = clamp_nonneg(v[1]);
  p.falloff = std::clamp(v[2], 0.05, 2.0);
  p.crouch_trigger = std::clamp(v[3], 0.1, 1.0);
  p.roll_trigger = std::clamp(v[4], 0.1, 1.0);
  p.cruise = std::clamp(v[5], 0.3, 1.2);
  return p;
}

std::array<double, ReactiveParams::kDim> ReactiveParams::to_vector() const {
  return {attract_gain, repulse_gain, falloff, crouch_trigger, roll_trigger, cruise};
}

void ReactivePolicy::reset(Seed /*seed*/) {}

Command ReactivePolicy::act(const sim::ObservationBundle& obs) {
  const double ref = detail::ground_ref(obs.m25d);

  double fx = 0.0, fy = 0.0;
  const double gn = std::hypot(obs.goal_rel[0], obs.goal_rel[1]);
  if (gn > 1e-9) {
    fx += params_.attract_gain * obs.goal_rel[0] / gn;
    fy += params_.attract_gain * obs.goal_rel[1] / gn;
  }
  for (int ix = 0; ix < sim::LocalMap25D::kNx; ++ix) {
    for (int iy = 0; iy < sim::LocalMap25D::kNy; ++iy) {
      if (ix == 10 && iy == 10) continue;
      if (!detail::blocked_cell(obs.m25d, ix, iy, ref)) continue;
      const double bx = detail::cell_bx(ix);
      const double by = detail::cell_by(iy);
      const double dist = std::max(std::hypot(bx, by), 0.05);
      if (dist > kRepulseRange) continue;
      const double w =
          kCellWeight * params_.repulse_gain * std::exp(-dist / params_.falloff) / dist;
      fx -= w * bx;
      fy -= w * by;
    }
  }

  Command cmd;
  const double fn = std::hypot(fx, fy);
  if (fn > 1e-9) {
    const double ux = fx / fn, uy = fy / fn;
    // One shared scale keeps the commanded direction exact after clamping.
    double scale = params_.cruise;
    if (scale * std::abs(uy) > kVyLimit) scale = kVyLimit / std::abs(uy);
    cmd.vx = scale * ux;
    cmd.vy = scale * uy;
    cmd.wz = std::clamp(2.0 * std::atan2(uy, ux), -kWzLimit, kWzLimit);
  }

  const double ceiling = forward_ceiling(obs.m3d);
  if (ceiling < params_.crouch_trigger) {
    cmd.h = std::clamp(ceiling - 0.08, kHeightMin, kHeightMax);
  }
  const double gap = forward_gap(obs.m3d);
  if (gap < params_.roll_trigger) {
    cmd.roll = kRollLimit;
    cmd.h = std::max(cmd.h, 0.18);
  }
  return cmd.clamped();
}

}  // namespace voxnav::policy
