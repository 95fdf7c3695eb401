#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "voxnav/harness/episode.hpp"
#include "voxnav/harness/tasks.hpp"
#include "voxnav/policy/cem.hpp"
#include "voxnav/policy/reactive.hpp"

namespace voxnav::harness {

/// Budgeted parameter search for the potential-field controller. The same
/// budget runs with the curriculum on or off, so the two arms are directly
/// comparable.
struct TrainConfig {
  policy::CEMConfig cem;
  EpisodeConfig episode;
  curriculum::PlannerConfig planner;
  bool pgcl = true;  // sub-goal-directed training episodes
};

struct TrainOutput {
  policy::ReactiveParams params;  // final distribution mean, clamped
  policy::CEMResult history;
  std::vector<int> levels;  // curriculum level per iteration (all 1 when off)
};

/// Cross-entropy training over the task suite. Every candidate of an
/// iteration scores the same task rotation with the same episode seeds
/// (common random numbers), so elite selection compares like with like; the
/// score is the episode's discounted return. With the curriculum on, all
/// candidates run at a shared level whose spacing grows by one step whenever
/// the iteration's best candidate completed every sub-goal sequence; each
/// episode tracks sub-goals sampled along the task's planned route at that
/// level's spacing. The trained parameters are the final distribution mean
/// rather than the single best draw, which under a level-shifting objective
/// would favor candidates scored at the easy early levels.
TrainOutput train_reactive(const VoxelWorld& world, const TaskSuite& suite,
                           const TrainConfig& config, Seed seed);

/// Learned-parameter serialization (values, raw vector, search history).
std::string params_to_json(const TrainOutput& output);
policy::ReactiveParams params_from_json(const std::string& text);  // ConfigError

void save_params(const std::filesystem::path& path, const TrainOutput& output);
policy::ReactiveParams load_params(const std::filesystem::path& path);

}  // namespace voxnav::harness
