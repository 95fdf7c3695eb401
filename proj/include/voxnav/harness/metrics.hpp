#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "voxnav/harness/episode.hpp"
#include "voxnav/harness/tasks.hpp"
#include "voxnav/policy/policy.hpp"
#include "voxnav/policy/reactive.hpp"

namespace voxnav::harness {

/// Named policy factory; evaluation builds a fresh instance per episode so
/// runs can fan out across workers.
struct PolicyEntry {
  std::string name;
  std::function<std::unique_ptr<policy::Policy>()> make;
};

/// Builds the factory for a policy name: "oracle", "oracle-rigid", "bug",
/// "wallfollow", "wallfollow-right", or "reactive" (optionally with tuned
/// parameters). ConfigError on unknown names.
PolicyEntry make_policy_entry(std::string_view name,
                              const policy::ReactiveParams* reactive_params = nullptr);

struct EvalRequest {
  std::vector<PolicyEntry> policies;
  std::vector<std::uint64_t> seeds;
  EpisodeConfig episode;
  curriculum::PlannerConfig planner;  // for the privileged routes
  int workers = 1;                    // episode-level parallelism
};

struct SeedStats {
  std::uint64_t seed = 0;
  double sr = 0.0;
  double spl = 0.0;
};

/// SR/SPL of one policy on one band: mean and population std across seeds.
struct BandReport {
  std::string band;
  int tasks = 0;
  double sr_mean = 0.0, sr_std = 0.0;
  double spl_mean = 0.0, spl_std = 0.0;
  std::vector<SeedStats> per_seed;
};

/// Distribution of per-episode colliding-tick counts, all bands and seeds.
struct CollisionSummary {
  int episodes = 0;
  double zero_fraction = 0.0;  // share of contact-free episodes
  double mean = 0.0;
  int p50 = 0, p90 = 0, max = 0;
};

struct PolicyReport {
  std::string name;
  std::vector<BandReport> bands;  // in suite band order
  BandReport overall;             // band label "all"
  CollisionSummary collisions;
};

struct MetricsReport {
  std::string world_tag;
  std::vector<std::uint64_t> seeds;
  std::vector<PolicyReport> policies;
};

/// Cross-product benchmark: every policy x seed x task, final-goal episodes.
/// The episode seed depends only on (seed, task index), so policies face
/// identical draws; results merge in (policy, seed, task) order regardless
/// of the worker count, making the report a pure function of its arguments.
MetricsReport evaluate(const VoxelWorld& world, const TaskSuite& suite,
                       const EvalRequest& request);

/// Versioned JSON rendering; byte-deterministic.
std::string metrics_to_json(const MetricsReport& report);

void save_metrics(const std::filesystem::path& path, const MetricsReport& report);

}  // namespace voxnav::harness
