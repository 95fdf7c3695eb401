#include "voxnav/policy/classical.hpp"

#include <algorithm>
#include <cmath>

#include "voxnav/core/angles.hpp"
#include "sensing.hpp"

namespace voxnav::policy {
namespace {

constexpr double kTickPeriod = 0.1;   // s, fixed control rate
constexpr double kStandoff = 0.4;     // m, held distance to the traced boundary
constexpr double kLineBand = 0.12;    // m, counts as being back on the start-goal line
constexpr double kRejoinGain = 0.1;   // m, required goal progress before rejoining

int side_sign(FollowSide side) { return side == FollowSide::kLeft ? 1 : -1; }

/// Shared boundary-tracing control. Priority order: pivot away from
/// obstructions dead ahead (backing off when wedged, since the long body
/// cannot rotate with its nose against a wall); servo the side distance to
/// the standoff with a rate term for damping; wrap toward the held side
/// right after losing it (convex corners); otherwise approach the nearest
/// visible obstruction. Sets *nothing_seen when the window shows no boundary
/// at all so the caller can run its own search pattern.
Command follow_control(const sim::LocalMap25D& m, double ref, FollowSide side, double cruise,
                       FollowMemory& mem, bool* nothing_seen = nullptr) {
  const int s = side_sign(side);
  if (nothing_seen) *nothing_seen = false;
  Command cmd;
  if (detail::frontal_blocked(m, ref, /*depth_cells=*/6, /*half_cells=*/2)) {
    const bool wedged = detail::frontal_blocked(m, ref, /*depth_cells=*/5, /*half_cells=*/2);
    cmd.vx = wedged ? -0.2 : 0.05;
    cmd.wz = -s * 1.2;
    mem.prev_side = -1.0;
    mem.since_side = 0;  // the boundary is right here; no need to search
  } else {
    const double dist = detail::side_distance(m, ref, s);
    if (dist <= 1.0) {
      const double rate =
          mem.prev_side < 0.0 ? 0.0 : std::clamp((dist - mem.prev_side) / 0.1, -1.0, 1.0);
      mem.prev_side = dist;
      mem.since_side = 0;
      cmd.vx = 0.8 * cruise;
      cmd.wz = std::clamp(s * (2.5 * (dist - kStandoff) + 0.8 * rate), -1.0, 1.0);
    } else {
      mem.prev_side = -1.0;
      ++mem.since_side;
      const auto near = detail::nearest_obstruction(m, ref);
      if (mem.since_side <= 15) {
        // Just lost the side wall: wrap around its end.
        cmd.vx = 0.45 * cruise;
        cmd.wz = s * 0.9;
      } else if (near.dist < 1.8) {
        // No recent contact: close in on whatever the window shows.
        const double bearing = std::atan2(near.by, near.bx);
        cmd.wz = std::clamp(2.0 * bearing, -1.2, 1.2);
        cmd.vx = std::abs(bearing) < 0.8 ? 0.5 * cruise : 0.1;
      } else {
        if (nothing_seen) *nothing_seen = true;
        cmd.vx = 0.45 * cruise;
        cmd.wz = s * 0.9;
      }
    }
  }
  return cmd.clamped();
}

}  // namespace

void Bug2Policy::reset(Seed seed) {
  mode_ = Mode::kSeek;
  anchored_ = false;
  psi_ = 0.0;
  hit_dist_ = 0.0;
  prev_offset_ = 0.0;
  prev_goal_dist_ = 0.0;
  mem_ = FollowMemory{};
  hits_.clear();
  Rng rng(seed, "bug-side");
  side_ = rng.uniform_int(2) == 0 ? FollowSide::kLeft : FollowSide::kRight;
}

Command Bug2Policy::act(const sim::ObservationBundle& obs) {
  const double gx = obs.goal_rel[0];
  const double gy = obs.goal_rel[1];
  const double d = std::hypot(gx, gy);

  if (anchored_) {
    psi_ += obs.achieved.wz * kTickPeriod;
    // A jump in goal distance means the driving loop swapped the goal point;
    // restart the line bookkeeping from the current pose.
    if (std::abs(d - prev_goal_dist_) > 0.5) anchored_ = false;
  }
  if (!anchored_) {
    if (d < 1e-9) return Command{0, 0, 0, 0.3, 0};
    anchored_ = true;
    psi_ = 0.0;
    // Body frame at anchor time becomes the fixed reference frame.
    goal_start_ = {gx, gy};
    line_len_ = d;
    line_dir_ = {gx / d, gy / d};
    mode_ = Mode::kSeek;
    hit_dist_ = 0.0;
    hits_.clear();
  }
  prev_goal_dist_ = d;

  // Reference-frame position recovered from the body-frame goal vector and
  // the dead-reckoned yaw: p = goal_start - R(psi) * goal_rel.
  const double c = std::cos(psi_), s = std::sin(psi_);
  const double px = goal_start_[0] - (c * gx - s * gy);
  const double py = goal_start_[1] - (s * gx + c * gy);
  // Signed offset from the anchor->goal line.
  const double offset = line_dir_[0] * py - line_dir_[1] * px;

  const double ref = detail::ground_ref(obs.m25d);
  const double beta = std::atan2(gy, gx);

  if (mode_ == Mode::kSeek) {
    const bool blocked = detail::frontal_blocked(obs.m25d, ref, /*depth_cells=*/8,
                                                 /*half_cells=*/2);
    if (blocked && std::abs(beta) < 0.7 && d > 0.45) {
      mode_ = Mode::kFollow;
      if (hits_.empty() || d < hits_.back() - 0.05) hits_.push_back(d);
      hit_dist_ = hit_dist_ == 0.0 ? d : std::min(hit_dist_, d);
      prev_offset_ = offset;
      left_line_ = false;
    } else {
      Command cmd;
      cmd.wz = std::clamp(2.0 * beta, -kWzLimit, kWzLimit);
      cmd.vx = std::abs(beta) < 0.8 ? cruise_ : 0.15;
      return cmd.clamped();
    }
  }

  // Boundary following: leave once back on the line with real goal progress,
  // but only after having genuinely left the line (otherwise the engage tick
  // itself would count as a crossing).
  if (std::abs(offset) > 0.3) left_line_ = true;
  const bool crossed = offset * prev_offset_ < 0.0 || std::abs(offset) < kLineBand;
  prev_offset_ = offset;
  if (crossed && left_line_ && d < hit_dist_ - kRejoinGain) {
    mode_ = Mode::kSeek;
    Command cmd;
    cmd.wz = std::clamp(2.0 * beta, -kWzLimit, kWzLimit);
    cmd.vx = std::abs(beta) < 0.8 ? cruise_ : 0.15;
    return cmd.clamped();
  }
  return follow_control(obs.m25d, ref, side_, cruise_, mem_);
}

void WallFollowPolicy::reset(Seed /*seed*/) {
  tick_ = 0;
  mem_ = FollowMemory{};
}

Command WallFollowPolicy::act(const sim::ObservationBundle& obs) {
  const double ref = detail::ground_ref(obs.m25d);
  const double t = tick_++ * kTickPeriod;
  bool nothing_seen = false;
  Command cmd = follow_control(obs.m25d, ref, side_, cruise_, mem_, &nothing_seen);
  if (nothing_seen) {
    // Sweep an expanding spiral until a boundary enters the window.
    cmd = Command{};
    cmd.vx = 0.8 * cruise_;
    cmd.wz = side_sign(side_) * std::max(0.25, 1.2 * std::exp(-t / 6.0));
    cmd = cmd.clamped();
  }
  return cmd;
}

}  // namespace voxnav::policy
