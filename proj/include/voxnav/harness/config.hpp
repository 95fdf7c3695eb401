#pragma once

#include <filesystem>
#include <string>

#include "voxnav/curriculum/curriculum.hpp"
#include "voxnav/curriculum/planner.hpp"
#include "voxnav/harness/episode.hpp"
#include "voxnav/policy/cem.hpp"
#include "voxnav/reward/reward.hpp"
#include "voxnav/sim/body.hpp"
#include "voxnav/sim/executor.hpp"

namespace voxnav::harness {

/// Every tunable the toolkit reads, with the benchmark defaults. The config
/// file is a strict TOML-style document ([section], key = value, # comments)
/// covering exactly these fields; unknown keys are rejected rather than
/// ignored so typos surface immediately.
struct HarnessConfig {
  reward::RewardWeights weights;
  reward::RewardOptions reward;
  sim::ExecutorParams executor;
  sim::BodyGeometry body;
  curriculum::CurriculumConfig curriculum;
  curriculum::PlannerConfig planner;
  policy::CEMConfig cem;
  int max_ticks = 1200;
  double arrival_radius = 0.2;
  double v_des_min = 0.3;
  double v_des_max = 1.2;
  double visit_cell = 0.5;
};

/// Parses the document over the defaults; sections may be partial.
/// ConfigError (with a line number) on malformed syntax, unknown keys,
/// type mismatches, or wrong array lengths.
HarnessConfig parse_config(const std::string& text);

/// The full default document: every key, default values, section comments.
/// parse_config(default_config_toml()) == HarnessConfig{}.
std::string default_config_toml();

/// Serializes a config as a complete document in the canonical key order.
std::string config_to_toml(const HarnessConfig& config);

HarnessConfig load_config(const std::filesystem::path& path);

/// The episode-protocol slice of the config.
EpisodeConfig episode_config(const HarnessConfig& config);

}  // namespace voxnav::harness
