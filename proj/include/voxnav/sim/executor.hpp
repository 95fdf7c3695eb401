#pragma once

#include <array>
#include <deque>

#include "voxnav/core/rng.hpp"
#include "voxnav/core/types.hpp"
#include "voxnav/core/voxel_world.hpp"
#include "voxnav/sim/body.hpp"

namespace voxnav::sim {

/// First-order-lag command tracking with actuation delay and noise.
struct ExecutorParams {
  std::array<double, 5> tau = {0.25, 0.25, 0.20, 0.30, 0.30};        // s, per channel
  std::array<double, 5> noise_std = {0.05, 0.05, 0.05, 0.01, 0.02};  // per sqrt(s)
  int delay_ticks = 1;
  double dt = 0.1;  // s
};

/// Steps the kinematic agent at a fixed rate. Each tick:
///   1. the clamped command enters a delay queue; the one issued delay_ticks
///      ago is applied;
///   2. each achieved channel moves toward the applied value by the lag
///      fraction 1 - exp(-dt/tau) plus zero-mean noise of std
///      noise_std * sqrt(dt);
///   3. the pose integrates: planar displacement from the achieved body-frame
///      velocity rotated by the pre-step yaw, then yaw += achieved wz * dt;
///   4. collisions roll the motion back in the order x, then y, then posture
///      (height/roll revert to their pre-step achieved values, so achieved
///      posture always matches the realized body). Yaw is never rolled back;
///      if even the fully rolled-back translation collides (a rotation-only
///      contact), the previous tick's full configuration is restored.
/// The result's colliding flag records whether any rollback or out-of-bounds
/// clamp fired. pose.z always equals ground(x, y) + achieved.h.
class Simulator {
 public:
  Simulator(ExecutorParams params, BodyGeometry geom, Seed seed)
      : params_(params), geom_(geom), rng_(seed, "executor") {}

  /// Places the agent and primes the delay queue with `initial`, so the first
  /// delay_ticks steps keep tracking it regardless of newer commands.
  AgentState reset(const VoxelWorld& world, double x, double y, double yaw,
                   const Command& initial = Command{0, 0, 0, 0.3, 0});

  /// Advances one tick. `cmd` may be out of range; it is clamped here (the
  /// caller keeps the raw value for its own accounting).
  AgentState step(const VoxelWorld& world, const AgentState& state, const Command& cmd);

  const ExecutorParams& params() const { return params_; }
  const BodyGeometry& geometry() const { return geom_; }

 private:
  ExecutorParams params_;
  BodyGeometry geom_;
  Rng rng_;
  std::deque<Command> queue_;
};

}  // namespace voxnav::sim
