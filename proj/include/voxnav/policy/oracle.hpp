#pragma once

#include "voxnav/policy/policy.hpp"

namespace voxnav::policy {

/// Tuning for the privileged reference controller.
struct OracleOptions {
  bool posture_enabled = true;  // false: hold nominal height, never roll
  double lookahead = 0.8;       // m along the route to the steering target
  double cruise = 1.0;          // m/s upright
  double crouch_cruise = 0.35;  // m/s while crouched or rolled
};

/// Upper-bound reference controller. Consumes the privileged channel: tracks
/// the planned route by pure pursuit from the exact pose, and commands
/// posture from the route annotations just ahead (crouch under low ceilings,
/// roll through narrow gaps), with hysteresis so posture does not chatter at
/// band edges. With posture disabled it tracks the same route rigidly
/// upright, which fails wherever the route requires a posture change.
class OraclePolicy : public Policy {
 public:
  explicit OraclePolicy(OracleOptions options = {}) : options_(options) {}

  void reset(Seed seed) override;
  void observe_privileged(const VoxelWorld& world, const curriculum::GlobalPath* path,
                          const AgentState& state) override;
  Command act(const sim::ObservationBundle& obs) override;
  std::string_view name() const override {
    return options_.posture_enabled ? "oracle" : "oracle-rigid";
  }

  const OracleOptions& options() const { return options_; }

 private:
  OracleOptions options_;
  const curriculum::GlobalPath* path_ = nullptr;
  Pose pose_{};
  double s_ = 0.0;  // monotone arclength of the nearest route point
  bool crouching_ = false;
  bool rolling_ = false;
};

}  // namespace voxnav::policy
