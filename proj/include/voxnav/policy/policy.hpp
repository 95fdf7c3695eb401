#pragma once

#include <string_view>

#include "voxnav/core/types.hpp"
#include "voxnav/core/voxel_world.hpp"
#include "voxnav/curriculum/planner.hpp"
#include "voxnav/sim/observation.hpp"

namespace voxnav::policy {

/// Per-episode decision maker. The driving loop calls reset() once, then each
/// tick offers privileged inputs via observe_privileged() (ignored by every
/// policy except the reference controller) and asks for a command via act().
/// Implementations always return in-range commands.
class Policy {
 public:
  virtual ~Policy() = default;

  /// Clears internal state and re-seeds any per-episode randomness.
  virtual void reset(Seed seed) = 0;

  /// Optional privileged channel: the true world, the planned route, and the
  /// exact agent state. Default ignores it.
  virtual void observe_privileged(const VoxelWorld& /*world*/,
                                  const curriculum::GlobalPath* /*path*/,
                                  const AgentState& /*state*/) {}

  /// Picks the next command from the tick's observation.
  virtual Command act(const sim::ObservationBundle& obs) = 0;

  virtual std::string_view name() const = 0;
};

}  // namespace voxnav::policy
