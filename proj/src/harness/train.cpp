#include "voxnav/harness/train.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "voxnav/core/errors.hpp"
#include "voxnav/core/rng.hpp"

namespace voxnav::harness {

namespace {

struct CandidateOutcome {
  double score = 0.0;
  bool all_sequences_complete = false;
};

}  // namespace

TrainOutput train_reactive(const VoxelWorld& world, const TaskSuite& suite,
                           const TrainConfig& config, Seed seed) {
  if (suite.tasks.empty()) throw ConfigError("training needs a non-empty task suite");

  std::vector<curriculum::GlobalPath> paths;
  paths.reserve(suite.tasks.size());
  for (const Task& task : suite.tasks) {
    paths.push_back(curriculum::plan_global_path(world, task.start.x, task.start.y, task.goal.x,
                                                 task.goal.y, config.planner));
  }

  const int episodes = std::max(1, config.cem.episodes_per_candidate);
  const std::size_t n_tasks = suite.tasks.size();
  const Rng train_rng(seed, "train");
  const curriculum::CurriculumConfig& base_cur = config.episode.curriculum;

  TrainOutput output;
  int level = 1;
  int last_iteration = -1;
  std::vector<CandidateOutcome> iteration_outcomes;
  auto promote_from = [&](const std::vector<CandidateOutcome>& outcomes) {
    if (outcomes.empty()) return;
    const auto best = std::max_element(
        outcomes.begin(), outcomes.end(),
        [](const CandidateOutcome& a, const CandidateOutcome& b) { return a.score < b.score; });
    // Spacing escalation only exists on the curriculum arm; without it the
    // objective is fixed and the ladder stays at its base rung.
    if (config.pgcl && best->all_sequences_complete) ++level;
  };

  const auto evaluator = [&](const policy::ReactiveParams& params, int iteration,
                             int candidate) -> double {
    if (iteration != last_iteration) {
      if (last_iteration >= 0) promote_from(iteration_outcomes);
      iteration_outcomes.clear();
      last_iteration = iteration;
      output.levels.push_back(level);
    }
    (void)candidate;  // common random numbers: all candidates share the draws

    CandidateOutcome outcome;
    outcome.all_sequences_complete = true;
    double total = 0.0;
    for (int e = 0; e < episodes; ++e) {
      const std::size_t task_index =
          (static_cast<std::size_t>(iteration) * episodes + e) % n_tasks;
      const std::uint64_t episode_seed = train_rng.derive(static_cast<std::uint64_t>(iteration))
                                             .derive(static_cast<std::uint64_t>(e))
                                             .next_u64();
      policy::ReactivePolicy pol(params);
      EpisodeSetup setup;
      setup.path = &paths[task_index];
      EpisodeResult result;
      if (config.pgcl) {
        curriculum::CurriculumConfig level_config = base_cur;
        level_config.base_spacing =
            base_cur.base_spacing + (level - 1) * base_cur.spacing_step;
        curriculum::Curriculum cur(&paths[task_index], &world, level_config);
        setup.curriculum = &cur;
        result = run_episode(world, suite.tasks[task_index], pol, config.episode,
                             Seed{episode_seed}, setup);
        outcome.all_sequences_complete &= result.sequence_complete;
      } else {
        result = run_episode(world, suite.tasks[task_index], pol, config.episode,
                             Seed{episode_seed}, setup);
        outcome.all_sequences_complete &= result.success;
      }
      total += result.total_return;
    }
    outcome.score = total / episodes;
    iteration_outcomes.push_back(outcome);
    return outcome.score;
  };

  policy::TrainResult cem = policy::cem_train(evaluator, config.cem, seed);
  output.history = std::move(cem.history);
  output.params = policy::ReactiveParams::from_vector(output.history.final_mean);
  return output;
}

std::string params_to_json(const TrainOutput& output) {
  nlohmann::ordered_json doc;
  doc["schema"] = "voxnav-params-v1";
  doc["policy"] = "reactive";
  const policy::ReactiveParams& p = output.params;
  doc["params"] = {{"attract_gain", p.attract_gain}, {"repulse_gain", p.repulse_gain},
                   {"falloff", p.falloff},           {"crouch_trigger", p.crouch_trigger},
                   {"roll_trigger", p.roll_trigger}, {"cruise", p.cruise}};
  doc["vector"] = output.params.to_vector();
  doc["history"] = {{"best_score", output.history.best_score},
                    {"mean_return", output.history.mean_return},
                    {"best_return", output.history.best_return},
                    {"levels", output.levels}};
  return doc.dump(2) + "\n";
}

policy::ReactiveParams params_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("parameter file: malformed JSON");
  try {
    if (doc.at("schema").get<std::string>() != "voxnav-params-v1") {
      throw ConfigError("parameter file: unsupported schema");
    }
    const std::vector<double> v = doc.at("vector").get<std::vector<double>>();
    return policy::ReactiveParams::from_vector(v);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("parameter file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("parameter file: ") + e.what());
  }
}

void save_params(const std::filesystem::path& path, const TrainOutput& output) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << params_to_json(output);
}

policy::ReactiveParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str());
}

}  // namespace voxnav::harness
