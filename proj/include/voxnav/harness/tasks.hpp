#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "voxnav/core/types.hpp"
#include "voxnav/core/voxel_world.hpp"
#include "voxnav/curriculum/curriculum.hpp"
#include "voxnav/curriculum/planner.hpp"
#include "voxnav/sim/body.hpp"

namespace voxnav::harness {

/// Planar start-goal distance range tasks are sampled from (bounds inclusive).
struct BandSpec {
  std::string label;
  double lo = 0.0;  // m
  double hi = 0.0;  // m
  int count = 0;    // tasks to sample
};

/// The three benchmark ranges ([5,10], [10,20], [20,30] m) with the given
/// per-band quotas; zero-count bands are dropped.
std::vector<BandSpec> standard_bands(int near, int mid, int far);

/// One navigation problem: a standing start pose and a goal point on the
/// ground, labeled with its distance band and the shortest feasible route
/// length the planner reported at generation time.
struct Task {
  Pose start;                     // z = ground + standing height, roll = 0
  curriculum::SubGoalPoint goal;  // z = ground under the goal
  std::string band;
  double shortest_length = 0.0;  // m, posture-feasible planner length
};

struct TaskSuite {
  std::string world_tag;  // names the world the suite was sampled on
  std::vector<Task> tasks;
};

/// Rejection-samples start/goal pairs per band until every quota is met:
/// the planar distance must lie inside the band, the standing start pose must
/// be collision-free, both endpoints must be planner-passable, and a
/// posture-feasible route must exist (its length becomes the task's
/// shortest_length). Deterministic in (world, bands, seed). A band that
/// cannot fill its quota within 10^4 samples raises GenerationError naming
/// the band.
TaskSuite generate_tasks(const VoxelWorld& world, std::span<const BandSpec> bands, Seed seed,
                         std::string world_tag = {},
                         const curriculum::PlannerConfig& planner = {},
                         const sim::BodyGeometry& geometry = {});

/// Versioned JSON serialization; byte-deterministic, exact double round-trip.
std::string suite_to_json(const TaskSuite& suite);
TaskSuite suite_from_json(const std::string& text);  // ConfigError on malformed input

void save_suite(const std::filesystem::path& path, const TaskSuite& suite);
TaskSuite load_suite(const std::filesystem::path& path);

}  // namespace voxnav::harness
