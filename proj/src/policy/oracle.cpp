#include "voxnav/policy/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "voxnav/core/angles.hpp"

namespace voxnav::policy {
namespace {

constexpr double kArriveDist = 0.12;     // m, stop inside this radius of the route end
constexpr double kSearchStep = 0.05;     // m, arclength sampling for the nearest point
constexpr double kSearchSpan = 1.5;      // m, how far ahead the nearest point may jump
constexpr double kWindowBack = 0.5;      // m, posture window behind the tracked point
constexpr double kWindowAhead = 1.2;     // m, posture window ahead of the tracked point
constexpr double kCrouchMargin = 0.08;   // m, body top kept below the ceiling by this
constexpr double kRollEnter = 0.34;      // m, gap below this demands rolling
constexpr double kRollExit = 0.36;       // m, stay rolled until the gap re-opens past this
constexpr double kCrouchEnter = 0.38;    // m, ceiling below this demands crouching
constexpr double kCrouchExit = 0.40;     // m, stay crouched until it re-opens past this

}  // namespace

void OraclePolicy::reset(Seed /*seed*/) {
  path_ = nullptr;
  pose_ = Pose{};
  s_ = 0.0;
  crouching_ = false;
  rolling_ = false;
}

void OraclePolicy::observe_privileged(const VoxelWorld& /*world*/,
                                      const curriculum::GlobalPath* path,
                                      const AgentState& state) {
  pose_ = state.pose;
  if (path != path_) {
    path_ = path;
    s_ = 0.0;
  }
  if (path_ == nullptr || path_->points.empty()) return;
  // Advance the tracked arclength to the nearest route point, never backward
  // and never by more than the search span, so loops in the route cannot
  // teleport the target.
  const double limit = std::min(s_ + kSearchSpan, path_->length());
  double best_s = s_;
  double best_d = 1e18;
  for (double s = s_; s <= limit + 1e-9; s += kSearchStep) {
    const auto p = path_->point_at(std::min(s, limit));
    const double d = std::hypot(p[0] - pose_.x, p[1] - pose_.y);
    if (d < best_d - 1e-12) {
      best_d = d;
      best_s = std::min(s, limit);
    }
  }
  s_ = best_s;
}

Command OraclePolicy::act(const sim::ObservationBundle& /*obs*/) {
  Command cmd;  // zero velocities, nominal posture
  if (path_ == nullptr || path_->points.empty()) return cmd;

  const double total = path_->length();
  const double a = std::max(0.0, s_ - kWindowBack);
  const double b = std::min(total, s_ + kWindowAhead);
  const double clearance = path_->min_clearance(a, b);
  const double gap = path_->min_gap(a, b);

  if (options_.posture_enabled) {
    rolling_ = gap < (rolling_ ? kRollExit : kRollEnter);
    crouching_ = clearance < (crouching_ ? kCrouchExit : kCrouchEnter);
  } else {
    rolling_ = false;
    crouching_ = false;
  }
  if (rolling_) {
    cmd.roll = kRollLimit;
    cmd.h = std::clamp(clearance - kCrouchMargin, 0.18, kHeightMax);
  } else if (crouching_) {
    cmd.h = std::clamp(clearance - kCrouchMargin, kHeightMin, kHeightMax);
  }

  const auto goal = path_->point_at(total);
  const double d_end = std::hypot(goal[0] - pose_.x, goal[1] - pose_.y);
  if (d_end < kArriveDist) return cmd;  // hold position and posture

  const auto target = path_->point_at(std::min(s_ + options_.lookahead, total));
  const double beta =
      wrap_angle(std::atan2(target[1] - pose_.y, target[0] - pose_.x) - pose_.yaw);
  cmd.wz = std::clamp(2.5 * beta, -kWzLimit, kWzLimit);
  const double base = (rolling_ || crouching_) ? options_.crouch_cruise : options_.cruise;
  double vx = std::abs(beta) > 1.2 ? 0.05 : base * std::max(0.2, std::cos(beta));
  cmd.vx = std::min(vx, 0.8 * d_end + 0.1);
  return cmd.clamped();
}

}  // namespace voxnav::policy
