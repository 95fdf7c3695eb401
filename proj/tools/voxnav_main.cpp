// Command-line front end for the navigation benchmark: world generation,
// task sampling, single-episode runs, controller training, policy sweeps,
// and plain-text exports.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "voxnav/core/errors.hpp"
#include "voxnav/curriculum/curriculum.hpp"
#include "voxnav/curriculum/planner.hpp"
#include "voxnav/harness/config.hpp"
#include "voxnav/harness/episode.hpp"
#include "voxnav/harness/metrics.hpp"
#include "voxnav/harness/tasks.hpp"
#include "voxnav/harness/train.hpp"
#include "voxnav/worldgen/world_io.hpp"
#include "voxnav/worldgen/worldgen.hpp"

namespace {

using nlohmann::ordered_json;
using namespace voxnav;

harness::HarnessConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return harness::HarnessConfig{};
  return harness::load_config(path);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad seed list entry '" + item + "'");
    }
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

ordered_json episode_json(const harness::EpisodeResult& r, const std::string& policy,
                          int task_index, const std::string& band) {
  ordered_json j;
  j["schema"] = "voxnav-episode-v1";
  j["policy"] = policy;
  j["task"] = task_index;
  j["band"] = band;
  j["success"] = r.success;
  j["timeout"] = r.timeout;
  j["sequence_complete"] = r.sequence_complete;
  j["ticks"] = r.ticks;
  j["realized_length"] = r.realized_length;
  j["shortest_length"] = r.shortest_length;
  j["collision_ticks"] = r.collision_ticks;
  j["final_distance"] = r.final_distance;
  j["v_des"] = r.v_des;
  j["total_return"] = r.total_return;
  j["segments"] = ordered_json::array();
  for (const auto& s : r.segments) {
    j["segments"].push_back({{"level", s.level},
                             {"index", s.index},
                             {"ticks", s.ticks},
                             {"value", s.value},
                             {"reached", s.reached}});
  }
  return j;
}

int cmd_gen(const std::string& preset_name_arg, std::uint64_t seed, const std::string& out,
            double extent_x, double extent_y, int walls, int tables, int boxes) {
  worldgen::WorldSpec spec;
  spec.preset = worldgen::preset_from_name(preset_name_arg);
  spec.seed = Seed{seed};
  spec.extent_x = extent_x;
  spec.extent_y = extent_y;
  spec.density = {walls, tables, boxes};
  const worldgen::GeneratedWorld gen = worldgen::generate_world(spec);
  worldgen::save_world(out, gen);
  std::cout << "wrote " << out << ": preset " << worldgen::preset_name(gen.preset) << " seed "
            << gen.seed.value << ", " << gen.world.nx() << "x" << gen.world.ny() << "x"
            << gen.world.nz() << " voxels, " << gen.obstacle_count << " obstacles\n";
  return 0;
}

int cmd_tasks(const std::string& world_path, int near, int mid, int far, std::uint64_t seed,
              const std::string& out, const std::string& config_path) {
  const harness::HarnessConfig hc = load_config_or_default(config_path);
  const worldgen::GeneratedWorld gen = worldgen::load_world(world_path);
  const std::string tag =
      std::string(worldgen::preset_name(gen.preset)) + ":" + std::to_string(gen.seed.value);
  const auto bands = harness::standard_bands(near, mid, far);
  if (bands.empty()) throw ConfigError("all band quotas are zero");
  const harness::TaskSuite suite =
      harness::generate_tasks(gen.world, bands, Seed{seed}, tag, hc.planner, hc.body);
  harness::save_suite(out, suite);
  std::cout << "wrote " << out << ": " << suite.tasks.size() << " tasks on " << tag << "\n";
  return 0;
}

int cmd_run(const std::string& world_path, const std::string& tasks_path, int index,
            const std::string& policy_name, std::uint64_t seed, const std::string& params_path,
            bool pgcl, const std::string& trajectory_path, const std::string& config_path) {
  const harness::HarnessConfig hc = load_config_or_default(config_path);
  const worldgen::GeneratedWorld gen = worldgen::load_world(world_path);
  const harness::TaskSuite suite = harness::load_suite(tasks_path);
  if (index < 0 || index >= static_cast<int>(suite.tasks.size())) {
    throw ConfigError("task index " + std::to_string(index) + " out of range (suite has " +
                      std::to_string(suite.tasks.size()) + ")");
  }
  const harness::Task& task = suite.tasks[index];

  std::optional<policy::ReactiveParams> params;
  if (!params_path.empty()) params = harness::load_params(params_path);
  auto entry = harness::make_policy_entry(policy_name, params ? &*params : nullptr);
  auto pol = entry.make();

  const curriculum::GlobalPath path = curriculum::plan_global_path(
      gen.world, task.start.x, task.start.y, task.goal.x, task.goal.y, hc.planner);

  harness::EpisodeSetup setup;
  setup.path = &path;
  std::optional<curriculum::Curriculum> cur;
  if (pgcl) {
    cur.emplace(&path, &gen.world, hc.curriculum);
    setup.curriculum = &*cur;
  }
  std::ofstream traj;
  if (!trajectory_path.empty()) {
    traj.open(trajectory_path, std::ios::binary);
    if (!traj) throw ConfigError("cannot write " + trajectory_path);
    setup.trajectory = &traj;
  }

  const harness::EpisodeResult result =
      harness::run_episode(gen.world, task, *pol, harness::episode_config(hc), Seed{seed}, setup);
  std::cout << episode_json(result, policy_name, index, task.band).dump(2) << "\n";
  return 0;
}

int cmd_train(const std::string& world_path, const std::string& tasks_path, std::uint64_t seed,
              const std::string& out, const std::string& pgcl_arg,
              const std::string& config_path) {
  const harness::HarnessConfig hc = load_config_or_default(config_path);
  const worldgen::GeneratedWorld gen = worldgen::load_world(world_path);
  const harness::TaskSuite suite = harness::load_suite(tasks_path);

  harness::TrainConfig config;
  config.cem = hc.cem;
  config.episode = harness::episode_config(hc);
  config.planner = hc.planner;
  if (pgcl_arg == "on") {
    config.pgcl = true;
  } else if (pgcl_arg == "off") {
    config.pgcl = false;
  } else {
    throw ConfigError("--pgcl must be on or off, got '" + pgcl_arg + "'");
  }

  const harness::TrainOutput output = harness::train_reactive(gen.world, suite, config, Seed{seed});
  for (std::size_t i = 0; i < output.history.mean_return.size(); ++i) {
    const int level = i < output.levels.size() ? output.levels[i] : 1;
    std::printf("iter %3zu  level %d  mean %10.3f  best %10.3f\n", i + 1, level,
                output.history.mean_return[i], output.history.best_return[i]);
  }
  harness::save_params(out, output);
  std::cout << "wrote " << out << " (best score " << output.history.best_score << ")\n";
  return 0;
}

void dump_curriculum(const std::filesystem::path& out_path, const VoxelWorld& world,
                     const harness::TaskSuite& suite, const harness::HarnessConfig& hc) {
  ordered_json doc;
  doc["schema"] = "voxnav-curriculum-v1";
  doc["tasks"] = ordered_json::array();
  for (std::size_t i = 0; i < suite.tasks.size(); ++i) {
    const harness::Task& task = suite.tasks[i];
    const curriculum::GlobalPath path = curriculum::plan_global_path(
        world, task.start.x, task.start.y, task.goal.x, task.goal.y, hc.planner);
    curriculum::Curriculum cur(&path, &world, hc.curriculum);
    ordered_json entry;
    entry["task"] = i;
    entry["band"] = task.band;
    entry["path_length"] = path.length();
    entry["waypoints"] = ordered_json::array();
    for (const auto& p : path.points) entry["waypoints"].push_back({p[0], p[1]});
    entry["final_level"] = cur.final_level();
    entry["levels"] = ordered_json::array();
    for (int level = 1; level <= cur.final_level(); ++level) {
      const double spacing =
          hc.curriculum.base_spacing + (level - 1) * hc.curriculum.spacing_step;
      const auto goals = curriculum::sample_subgoals(path, spacing, world);
      ordered_json lj;
      lj["level"] = level;
      lj["spacing"] = spacing;
      lj["subgoals"] = ordered_json::array();
      for (const auto& g : goals) lj["subgoals"].push_back({g.x, g.y, g.z});
      entry["levels"].push_back(std::move(lj));
    }
    doc["tasks"].push_back(std::move(entry));
  }
  write_text(out_path, doc.dump(2) + "\n");
}

int cmd_eval(const std::string& world_path, const std::string& tasks_path,
             const std::string& policies_csv, const std::string& seeds_csv, int workers,
             const std::string& out, const std::string& params_path,
             const std::string& config_path, const std::string& dump_curriculum_path) {
  const harness::HarnessConfig hc = load_config_or_default(config_path);
  const worldgen::GeneratedWorld gen = worldgen::load_world(world_path);
  const harness::TaskSuite suite = harness::load_suite(tasks_path);

  std::optional<policy::ReactiveParams> params;
  if (!params_path.empty()) params = harness::load_params(params_path);

  harness::EvalRequest request;
  for (const std::string& name : split_csv(policies_csv)) {
    request.policies.push_back(harness::make_policy_entry(name, params ? &*params : nullptr));
  }
  if (request.policies.empty()) throw ConfigError("empty policy list");
  request.seeds = parse_seed_list(seeds_csv);
  request.episode = harness::episode_config(hc);
  request.planner = hc.planner;
  request.workers = workers;

  if (!dump_curriculum_path.empty()) {
    dump_curriculum(dump_curriculum_path, gen.world, suite, hc);
  }

  const harness::MetricsReport report = harness::evaluate(gen.world, suite, request);

  std::printf("%-16s %-8s %6s  %7s %7s  %7s %7s\n", "policy", "band", "tasks", "SR", "±", "SPL",
              "±");
  for (const auto& pr : report.policies) {
    for (const auto& band : pr.bands) {
      std::printf("%-16s %-8s %6d  %7.1f %7.2f  %7.1f %7.2f\n", pr.name.c_str(),
                  band.band.c_str(), band.tasks, band.sr_mean, band.sr_std, band.spl_mean,
                  band.spl_std);
    }
    std::printf("%-16s %-8s %6d  %7.1f %7.2f  %7.1f %7.2f\n", pr.name.c_str(), "all",
                pr.overall.tasks, pr.overall.sr_mean, pr.overall.sr_std, pr.overall.spl_mean,
                pr.overall.spl_std);
  }
  if (!out.empty()) {
    harness::save_metrics(out, report);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_export(const std::string& world_path, const std::string& heightmap_path,
               const std::string& default_config_path, const std::string& trajectory_path,
               const std::string& out_path) {
  int actions = 0;
  if (!heightmap_path.empty()) {
    if (world_path.empty()) throw ConfigError("--heightmap needs --world");
    const worldgen::GeneratedWorld gen = worldgen::load_world(world_path);
    std::string csv;
    for (int iy = 0; iy < gen.world.ny(); ++iy) {
      for (int ix = 0; ix < gen.world.nx(); ++ix) {
        if (ix) csv += ',';
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", gen.world.ground_elevation(ix, iy));
        csv += buf;
      }
      csv += '\n';
    }
    write_text(heightmap_path, csv);
    std::cout << "wrote " << heightmap_path << "\n";
    ++actions;
  }
  if (!default_config_path.empty()) {
    write_text(default_config_path, harness::default_config_toml());
    std::cout << "wrote " << default_config_path << "\n";
    ++actions;
  }
  if (!trajectory_path.empty()) {
    if (out_path.empty()) throw ConfigError("--trajectory needs --out");
    std::ifstream in(trajectory_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + trajectory_path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty trajectory file");
    ordered_json doc;
    doc["schema"] = "voxnav-trajectory-v1";
    doc["columns"] = split_csv(line);
    doc["rows"] = ordered_json::array();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ordered_json row = ordered_json::array();
      for (const std::string& cell : split_csv(line)) row.push_back(std::stod(cell));
      doc["rows"].push_back(std::move(row));
    }
    write_text(out_path, doc.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
    ++actions;
  }
  if (actions == 0) {
    throw ConfigError("export: pass --heightmap, --default-config, or --trajectory");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic voxel-world navigation benchmark"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a voxel world");
  std::string gen_preset = "random";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  double gen_ex = 20.0, gen_ey = 20.0;
  int gen_walls = 6, gen_tables = 4, gen_boxes = 4;
  gen->add_option("--preset", gen_preset, "corridor, room, complex1, complex2, or random");
  gen->add_option("--seed", gen_seed, "Generation seed");
  gen->add_option("--out", gen_out, "Output world JSON")->required();
  gen->add_option("--extent-x", gen_ex, "World width in meters (random preset)");
  gen->add_option("--extent-y", gen_ey, "World depth in meters (random preset)");
  gen->add_option("--walls", gen_walls, "Wall count (random preset)");
  gen->add_option("--tables", gen_tables, "Table count (random preset)");
  gen->add_option("--boxes", gen_boxes, "Floating box count (random preset)");

  // tasks
  auto* tasks = app.add_subcommand("tasks", "Sample start/goal tasks on a world");
  std::string tasks_world, tasks_out, tasks_config;
  int tasks_near = 10, tasks_mid = 10, tasks_far = 10;
  std::uint64_t tasks_seed = 0;
  tasks->add_option("--world", tasks_world, "World JSON")->required();
  tasks->add_option("--near", tasks_near, "Tasks in the 5-10 m band");
  tasks->add_option("--mid", tasks_mid, "Tasks in the 10-20 m band");
  tasks->add_option("--far", tasks_far, "Tasks in the 20-30 m band");
  tasks->add_option("--seed", tasks_seed, "Sampling seed");
  tasks->add_option("--out", tasks_out, "Output task JSON")->required();
  tasks->add_option("--config", tasks_config, "Settings file (TOML)");

  // run
  auto* run = app.add_subcommand("run", "Run one episode and print its result");
  std::string run_world, run_tasks, run_policy = "oracle", run_params, run_traj, run_config;
  int run_index = 0;
  std::uint64_t run_seed = 0;
  bool run_pgcl = false;
  run->add_option("--world", run_world, "World JSON")->required();
  run->add_option("--tasks", run_tasks, "Task JSON")->required();
  run->add_option("--index", run_index, "Task index within the suite");
  run->add_option("--policy", run_policy, "Policy name");
  run->add_option("--seed", run_seed, "Episode seed");
  run->add_option("--params", run_params, "Learned parameter JSON for the reactive policy");
  run->add_flag("--pgcl", run_pgcl, "Attach sub-goal curriculum shaping");
  run->add_option("--trajectory", run_traj, "Write a per-tick CSV trace here");
  run->add_option("--config", run_config, "Settings file (TOML)");

  // train
  auto* train = app.add_subcommand("train", "Optimize the reactive controller");
  std::string train_world, train_tasks, train_out, train_pgcl = "on", train_config;
  std::uint64_t train_seed = 0;
  train->add_option("--world", train_world, "World JSON")->required();
  train->add_option("--tasks", train_tasks, "Task JSON")->required();
  train->add_option("--seed", train_seed, "Training seed");
  train->add_option("--out", train_out, "Output parameter JSON")->required();
  train->add_option("--pgcl", train_pgcl, "Curriculum shaping: on or off");
  train->add_option("--config", train_config, "Settings file (TOML)");

  // eval
  auto* eval = app.add_subcommand("eval", "Sweep policies x seeds over a task suite");
  std::string eval_world, eval_tasks, eval_policies = "oracle,bug", eval_seeds = "1,2,3";
  std::string eval_out, eval_params, eval_config, eval_dump;
  int eval_workers = 1;
  eval->add_option("--world", eval_world, "World JSON")->required();
  eval->add_option("--tasks", eval_tasks, "Task JSON")->required();
  eval->add_option("--policies", eval_policies, "Comma-separated policy names");
  eval->add_option("--seeds", eval_seeds, "Comma-separated episode seed bases");
  eval->add_option("--workers", eval_workers, "Concurrent episode workers");
  eval->add_option("--out", eval_out, "Output metrics JSON");
  eval->add_option("--params", eval_params, "Learned parameter JSON for the reactive policy");
  eval->add_option("--config", eval_config, "Settings file (TOML)");
  eval->add_option("--dump-curriculum", eval_dump,
                   "Write per-task routes and per-level sub-goal sets here");

  // export
  auto* exp = app.add_subcommand("export", "Plain-text exports");
  std::string exp_world, exp_heightmap, exp_defcfg, exp_traj, exp_out;
  exp->add_option("--world", exp_world, "World JSON");
  exp->add_option("--heightmap", exp_heightmap, "Write the ground elevation grid as CSV here");
  exp->add_option("--default-config", exp_defcfg, "Write the built-in settings document here");
  exp->add_option("--trajectory", exp_traj, "Trajectory CSV to convert to JSON");
  exp->add_option("--out", exp_out, "Output for --trajectory conversion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_preset, gen_seed, gen_out, gen_ex, gen_ey, gen_walls, gen_tables,
                     gen_boxes);
    }
    if (tasks->parsed()) {
      return cmd_tasks(tasks_world, tasks_near, tasks_mid, tasks_far, tasks_seed, tasks_out,
                       tasks_config);
    }
    if (run->parsed()) {
      return cmd_run(run_world, run_tasks, run_index, run_policy, run_seed, run_params, run_pgcl,
                     run_traj, run_config);
    }
    if (train->parsed()) {
      return cmd_train(train_world, train_tasks, train_seed, train_out, train_pgcl, train_config);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_world, eval_tasks, eval_policies, eval_seeds, eval_workers, eval_out,
                      eval_params, eval_config, eval_dump);
    }
    if (exp->parsed()) {
      return cmd_export(exp_world, exp_heightmap, exp_defcfg, exp_traj, exp_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PlanningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
