#pragma once

#include <algorithm>
#include <array>
#include <cstdint>

namespace voxnav {

// Command channel limits. Policies clamp into these; out-of-range values stay
// representable so the command-limit penalty can fire.
inline constexpr double kVxLimit = 1.5;    // m/s
inline constexpr double kVyLimit = 1.0;    // m/s
inline constexpr double kWzLimit = 1.5;    // rad/s
inline constexpr double kHeightMin = 0.1;  // m
inline constexpr double kHeightMax = 0.4;  // m
inline constexpr double kRollLimit = 1.0;  // rad

/// 5-D navigation command: planar velocities plus body posture targets.
struct Command {
  double vx = 0.0;    // forward velocity, body frame (m/s)
  double vy = 0.0;    // lateral velocity, body frame (m/s)
  double wz = 0.0;    // yaw rate (rad/s)
  double h = 0.3;     // body height above local ground (m)
  double roll = 0.0;  // body roll (rad)

  std::array<double, 5> channels() const { return {vx, vy, wz, h, roll}; }

  Command clamped() const {
    return {std::clamp(vx, -kVxLimit, kVxLimit), std::clamp(vy, -kVyLimit, kVyLimit),
            std::clamp(wz, -kWzLimit, kWzLimit), std::clamp(h, kHeightMin, kHeightMax),
            std::clamp(roll, -kRollLimit, kRollLimit)};
  }
};

/// True iff every channel lies within its limit (bounds inclusive).
inline bool command_in_range(const Command& c) {
  return c.vx >= -kVxLimit && c.vx <= kVxLimit && c.vy >= -kVyLimit && c.vy <= kVyLimit &&
         c.wz >= -kWzLimit && c.wz <= kWzLimit && c.h >= kHeightMin && c.h <= kHeightMax &&
         c.roll >= -kRollLimit && c.roll <= kRollLimit;
}

/// Planar pose with body height and roll; yaw in (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;  // body-center height, world frame
  double yaw = 0.0;
  double roll = 0.0;
};

/// Full kinematic state of the simulated agent.
struct AgentState {
  Pose pose;
  Command achieved;  // channel values the executor currently realizes
  double vz = 0.0;
  std::array<double, 2> omega_xy = {0.0, 0.0};
  bool colliding = false;
  double cumulative_path_length = 0.0;
};

struct Seed {
  std::uint64_t value = 0;
};

}  // namespace voxnav
