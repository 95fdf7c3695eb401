#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "voxnav/core/types.hpp"
#include "voxnav/core/voxel_world.hpp"
#include "voxnav/curriculum/curriculum.hpp"
#include "voxnav/harness/tasks.hpp"
#include "voxnav/policy/policy.hpp"
#include "voxnav/reward/reward.hpp"
#include "voxnav/sim/body.hpp"
#include "voxnav/sim/executor.hpp"

namespace voxnav::harness {

/// Everything one 10 Hz episode needs besides the world and the task.
struct EpisodeConfig {
  sim::ExecutorParams executor;
  sim::BodyGeometry geometry;
  reward::RewardWeights weights;
  reward::RewardOptions reward;
  /// Gamma and segment timeout for episodes without an attached curriculum;
  /// attached curricula carry their own copy.
  curriculum::CurriculumConfig curriculum;
  int max_ticks = 1200;         // 120 s of sim time
  double arrival_radius = 0.2;  // m planar, strict; task-level success
  double v_des_min = 0.3;       // desired-speed draw, once per episode
  double v_des_max = 1.2;
  double visit_cell = 0.5;  // m, exploration-counter cell size
};

/// Optional attachments: the privileged route (offered to the policy every
/// tick), a curriculum that redirects the goal observation to the next
/// unreached sub-goal, and a CSV sink receiving one row per tick including
/// the reward breakdown.
struct EpisodeSetup {
  const curriculum::GlobalPath* path = nullptr;
  curriculum::Curriculum* curriculum = nullptr;
  std::ostream* trajectory = nullptr;
};

struct EpisodeResult {
  bool success = false;  // final planar goal distance below the arrival radius
  bool timeout = false;  // ended by the tick or segment budget
  int ticks = 0;
  double realized_length = 0.0;    // p_i, m of planar travel
  double shortest_length = 0.0;    // l_i, copied from the task
  int collision_ticks = 0;         // ticks whose step reported contact
  double final_distance = 0.0;     // planar m to the task goal at the end
  double v_des = 0.0;              // the episode's desired-speed draw
  bool sequence_complete = false;  // curriculum runs: every sub-goal reached
  std::vector<curriculum::SegmentReturn> segments;
  double total_return = 0.0;  // sum of segment values (empirical return)
};

/// Runs one episode: per tick, observe (sub-goal-directed when a curriculum
/// is attached) -> act -> step -> reward on the post-step state against the
/// goal observed that tick. Episodes without a curriculum end at the task
/// goal (< arrival_radius, planar) or the tick budget; episodes with one end
/// when the sub-goal sequence completes, a segment exceeds the curriculum's
/// segment timeout, or the tick budget runs out. The seed drives the
/// executor noise, the policy reset, and the desired-speed draw, so equal
/// inputs reproduce the result bit for bit.
EpisodeResult run_episode(const VoxelWorld& world, const Task& task, policy::Policy& policy,
                          const EpisodeConfig& config, Seed seed,
                          const EpisodeSetup& setup = {});

/// 100 * mean success. ConfigError on an empty set.
double compute_sr(std::span<const EpisodeResult> results);

/// 100 * mean(S_i * l_i / max(p_i, l_i)). ConfigError on an empty set.
double compute_spl(std::span<const EpisodeResult> results);

/// Column names of the trajectory CSV, comma-joined, no trailing newline.
const char* trajectory_csv_header();

}  // namespace voxnav::harness
