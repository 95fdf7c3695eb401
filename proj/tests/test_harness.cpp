#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "voxnav/core/errors.hpp"
#include "voxnav/core/rng.hpp"
#include "voxnav/curriculum/curriculum.hpp"
#include "voxnav/curriculum/planner.hpp"
#include "voxnav/harness/config.hpp"
#include "voxnav/harness/episode.hpp"
#include "voxnav/harness/metrics.hpp"
#include "voxnav/harness/tasks.hpp"
#include "voxnav/harness/train.hpp"
#include "voxnav/policy/oracle.hpp"
#include "voxnav/policy/policy.hpp"
#include "voxnav/policy/reactive.hpp"
#include "voxnav/sim/body.hpp"
#include "voxnav/worldgen/worldgen.hpp"

using namespace voxnav;
using harness::BandSpec;
using harness::EpisodeConfig;
using harness::EpisodeResult;
using harness::EpisodeSetup;
using harness::Task;
using harness::TaskSuite;

namespace {

struct NullPolicy : policy::Policy {
  void reset(Seed) override {}
  Command act(const sim::ObservationBundle&) override { return Command{}; }
  std::string_view name() const override { return "null"; }
};

Task make_task(const VoxelWorld& world, double sx, double sy, double yaw, double gx, double gy,
               const std::string& band = "test") {
  Task task;
  task.start = Pose{sx, sy, world.ground_at(sx, sy) + 0.3, yaw, 0.0};
  task.goal = curriculum::SubGoalPoint{gx, gy, world.ground_at(gx, gy)};
  task.band = band;
  task.shortest_length = curriculum::shortest_path_length(world, sx, sy, gx, gy);
  return task;
}

}  // namespace

TEST_CASE("standard bands cover the three benchmark ranges") {
  const auto bands = harness::standard_bands(4, 3, 2);
  REQUIRE(bands.size() == 3);
  CHECK(bands[0].label == "b5_10");
  CHECK(bands[0].lo == 5.0);
  CHECK(bands[0].hi == 10.0);
  CHECK(bands[0].count == 4);
  CHECK(bands[1].label == "b10_20");
  CHECK(bands[2].label == "b20_30");
  CHECK(harness::standard_bands(2, 0, 0).size() == 1);
}

TEST_CASE("task generation honors quotas, bands, and feasibility") {
  const VoxelWorld world = worldgen::make_ground_world(16.0, 16.0);
  const auto bands = harness::standard_bands(3, 2, 0);
  const TaskSuite suite = harness::generate_tasks(world, bands, Seed{42}, "flat16");

  REQUIRE(suite.tasks.size() == 5);
  CHECK(suite.world_tag == "flat16");
  int near = 0, mid = 0;
  for (const Task& task : suite.tasks) {
    const double d = std::hypot(task.goal.x - task.start.x, task.goal.y - task.start.y);
    if (task.band == "b5_10") {
      ++near;
      CHECK(d >= 5.0);
      CHECK(d <= 10.0);
    } else {
      REQUIRE(task.band == "b10_20");
      ++mid;
      CHECK(d >= 10.0);
      CHECK(d <= 20.0);
    }
    CHECK_FALSE(sim::check_collision(world, task.start.x, task.start.y, task.start.yaw, 0.3, 0.0));
    // Any route is at least as long as the straight line, and on open ground
    // the grid route stays within the octile overhead of it.
    CHECK(task.shortest_length >= d - 1e-9);
    CHECK(task.shortest_length <= 1.1 * d + 0.3);
    CHECK(task.start.z == doctest::Approx(0.3).epsilon(1e-12));
  }
  CHECK(near == 3);
  CHECK(mid == 2);

  const TaskSuite again = harness::generate_tasks(world, bands, Seed{42}, "flat16");
  CHECK(harness::suite_to_json(again) == harness::suite_to_json(suite));
  const TaskSuite other = harness::generate_tasks(world, bands, Seed{43}, "flat16");
  CHECK(harness::suite_to_json(other) != harness::suite_to_json(suite));
}

TEST_CASE("task generation reports unreachable quotas by band") {
  // A 10 m world cannot hold a 20 m planar separation.
  const VoxelWorld small = worldgen::make_ground_world(10.0, 10.0);
  const auto bands = harness::standard_bands(0, 0, 2);
  CHECK_THROWS_WITH_AS(harness::generate_tasks(small, bands, Seed{1}),
                       doctest::Contains("b20_30"), GenerationError);

  // A sealed world rejects every start sample.
  VoxelWorld sealed = worldgen::make_ground_world(8.0, 8.0);
  sealed.fill_box(0.0, 0.0, 0.0, 8.0, 8.0, 3.0);
  const std::vector<BandSpec> one{{"near", 2.0, 6.0, 1}};
  CHECK_THROWS_AS(harness::generate_tasks(sealed, one, Seed{1}), GenerationError);
}

TEST_CASE("task suite JSON round-trips and rejects malformed input") {
  const VoxelWorld world = worldgen::make_ground_world(12.0, 12.0);
  const auto bands = harness::standard_bands(2, 0, 0);
  const TaskSuite suite = harness::generate_tasks(world, bands, Seed{7}, "flat12");

  const std::string text = harness::suite_to_json(suite);
  const TaskSuite loaded = harness::suite_from_json(text);
  CHECK(harness::suite_to_json(loaded) == text);
  REQUIRE(loaded.tasks.size() == suite.tasks.size());
  CHECK(loaded.tasks[0].start.x == suite.tasks[0].start.x);  // exact double round-trip
  CHECK(loaded.tasks[0].shortest_length == suite.tasks[0].shortest_length);

  CHECK_THROWS_AS(harness::suite_from_json("{"), ConfigError);
  CHECK_THROWS_AS(harness::suite_from_json("{\"schema\":\"bogus\",\"tasks\":[]}"), ConfigError);
  CHECK_THROWS_AS(harness::suite_from_json("{\"schema\":\"voxnav-tasks-v1\"}"), ConfigError);
}

TEST_CASE("reference controller completes an open-ground task cleanly") {
  const VoxelWorld world = worldgen::make_ground_world(12.0, 6.0);
  const Task task = make_task(world, 2.55, 3.05, 0.0, 8.55, 3.05);
  const curriculum::GlobalPath path =
      curriculum::plan_global_path(world, task.start.x, task.start.y, task.goal.x, task.goal.y);

  EpisodeConfig config;
  EpisodeSetup setup;
  setup.path = &path;
  policy::OraclePolicy oracle;
  const EpisodeResult r = harness::run_episode(world, task, oracle, config, Seed{5}, setup);

  CHECK(r.success);
  CHECK_FALSE(r.timeout);
  CHECK(r.collision_ticks == 0);
  CHECK(r.final_distance < 0.2);
  CHECK(r.ticks < config.max_ticks);
  CHECK(r.shortest_length == task.shortest_length);
  CHECK(r.realized_length / r.shortest_length <= 1.1);
  // Any successful run must have traveled at least the straight-line
  // distance minus the arrival threshold.
  const double straight = std::hypot(task.goal.x - task.start.x, task.goal.y - task.start.y);
  CHECK(r.realized_length >= straight - 0.2 - 1e-9);
  CHECK(r.v_des >= 0.3);
  CHECK(r.v_des <= 1.2);
  REQUIRE(r.segments.size() == 1);
  CHECK(r.segments[0].reached);
  CHECK(r.segments[0].ticks == r.ticks);

  policy::OraclePolicy oracle2;
  const EpisodeResult r2 = harness::run_episode(world, task, oracle2, config, Seed{5}, setup);
  CHECK(r2.ticks == r.ticks);
  CHECK(r2.realized_length == r.realized_length);
  CHECK(r2.total_return == r.total_return);
  CHECK(r2.v_des == r.v_des);

  policy::OraclePolicy oracle3;
  const EpisodeResult r3 = harness::run_episode(world, task, oracle3, config, Seed{6}, setup);
  CHECK(r3.v_des != r.v_des);
}

TEST_CASE("a stationary policy times out without success") {
  const VoxelWorld world = worldgen::make_ground_world(10.0, 6.0);
  const Task task = make_task(world, 2.55, 3.05, 0.0, 7.55, 3.05);
  EpisodeConfig config;
  config.max_ticks = 50;
  NullPolicy idle;
  const EpisodeResult r = harness::run_episode(world, task, idle, config, Seed{9});
  CHECK_FALSE(r.success);
  CHECK(r.timeout);
  CHECK(r.ticks == 50);
  CHECK(r.realized_length < 1.0);  // only actuation noise wobble
  CHECK(r.final_distance > 4.0);
  REQUIRE(r.segments.size() == 1);
  CHECK_FALSE(r.segments[0].reached);
  CHECK(r.segments[0].ticks == 50);
}

TEST_CASE("per-tick rewards and discounting match the closed form") {
  const VoxelWorld world = worldgen::make_ground_world(12.0, 6.0);
  const Task task = make_task(world, 3.05, 3.05, 0.0, 9.05, 3.05);
  EpisodeConfig config;
  config.executor.noise_std = {0.0, 0.0, 0.0, 0.0, 0.0};
  NullPolicy idle;

  SUBCASE("single tick") {
    config.max_ticks = 1;
    const EpisodeResult r = harness::run_episode(world, task, idle, config, Seed{11});
    REQUIRE(r.ticks == 1);
    // Stationary, in-range, collision-free, nominal posture: only the
    // first-visit bonus and the speed term fire.
    const double expected = 0.5 + 0.25 * std::exp(-r.v_des / 0.3);
    CHECK(r.total_return == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("three ticks discount at gamma") {
    config.max_ticks = 3;
    const EpisodeResult r = harness::run_episode(world, task, idle, config, Seed{11});
    REQUIRE(r.ticks == 3);
    const double s = 0.25 * std::exp(-r.v_des / 0.3);
    const double g = config.curriculum.gamma;
    const double expected = (0.5 + s) + g * (0.5 / std::sqrt(2.0) + s) +
                            g * g * (0.5 / std::sqrt(3.0) + s);
    CHECK(r.total_return == doctest::Approx(expected).epsilon(1e-12));
    REQUIRE(r.segments.size() == 1);
    CHECK(r.segments[0].value == r.total_return);
  }
}

TEST_CASE("curriculum episodes close one segment per sub-goal") {
  const VoxelWorld world = worldgen::make_ground_world(12.0, 6.0);
  const Task task = make_task(world, 2.05, 3.05, 0.0, 8.05, 3.05);
  const curriculum::GlobalPath path =
      curriculum::plan_global_path(world, task.start.x, task.start.y, task.goal.x, task.goal.y);
  curriculum::Curriculum cur(&path, &world);
  const int n_goals = static_cast<int>(cur.goals().size());
  REQUIRE(n_goals >= 5);  // roughly one per meter plus the goal

  EpisodeConfig config;
  EpisodeSetup setup;
  setup.path = &path;
  setup.curriculum = &cur;
  policy::OraclePolicy oracle;
  const EpisodeResult r = harness::run_episode(world, task, oracle, config, Seed{3}, setup);

  CHECK(r.success);
  CHECK(r.sequence_complete);
  CHECK_FALSE(r.timeout);
  CHECK(r.final_distance < 0.2);
  REQUIRE(static_cast<int>(r.segments.size()) == n_goals);
  int tick_sum = 0;
  double value_sum = 0.0;
  for (int i = 0; i < n_goals; ++i) {
    CHECK(r.segments[i].reached);
    CHECK(r.segments[i].index == i);
    CHECK(r.segments[i].ticks >= 1);
    tick_sum += r.segments[i].ticks;
    value_sum += r.segments[i].value;
  }
  CHECK(tick_sum == r.ticks);
  CHECK(r.total_return == doctest::Approx(value_sum).epsilon(1e-12));
}

TEST_CASE("curriculum segments time out on stalled progress") {
  const VoxelWorld world = worldgen::make_ground_world(12.0, 6.0);
  const Task task = make_task(world, 2.05, 3.05, 0.0, 8.05, 3.05);
  const curriculum::GlobalPath path =
      curriculum::plan_global_path(world, task.start.x, task.start.y, task.goal.x, task.goal.y);
  curriculum::CurriculumConfig cur_config;
  cur_config.segment_timeout_s = 2.0;  // 20 ticks
  curriculum::Curriculum cur(&path, &world, cur_config);

  EpisodeConfig config;
  EpisodeSetup setup;
  setup.path = &path;
  setup.curriculum = &cur;
  NullPolicy idle;
  const EpisodeResult r = harness::run_episode(world, task, idle, config, Seed{4}, setup);
  CHECK_FALSE(r.success);
  CHECK(r.timeout);
  CHECK_FALSE(r.sequence_complete);
  CHECK(r.ticks == 20);
  REQUIRE(r.segments.size() == 1);
  CHECK_FALSE(r.segments[0].reached);
  CHECK(r.segments[0].ticks == 20);
}

TEST_CASE("success metrics match their closed formulas") {
  auto result = [](bool success, double p, double l) {
    EpisodeResult r;
    r.success = success;
    r.realized_length = p;
    r.shortest_length = l;
    return r;
  };

  SUBCASE("worked examples") {
    std::vector<EpisodeResult> one{result(true, 10.0, 10.0)};
    CHECK(harness::compute_spl(one) == doctest::Approx(100.0).epsilon(1e-12));
    std::vector<EpisodeResult> two{result(true, 10.0, 10.0), result(false, 3.0, 9.0)};
    CHECK(harness::compute_spl(two) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(harness::compute_sr(two) == doctest::Approx(50.0).epsilon(1e-12));
    std::vector<EpisodeResult> stretch{result(true, 10.0, 8.0)};
    CHECK(harness::compute_spl(stretch) == doctest::Approx(80.0).epsilon(1e-12));
    // A realized path shorter than the reference still caps the ratio at 1.
    std::vector<EpisodeResult> shortcut{result(true, 7.0, 8.0)};
    CHECK(harness::compute_spl(shortcut) == doctest::Approx(100.0).epsilon(1e-12));
  }

  SUBCASE("empty sets are undefined") {
    const std::vector<EpisodeResult> none;
    CHECK_THROWS_AS(harness::compute_spl(none), ConfigError);
    CHECK_THROWS_AS(harness::compute_sr(none), ConfigError);
  }

  SUBCASE("random sets agree with the formula and keep SPL <= SR") {
    Rng rng(Seed{77}, "spl-fuzz");
    for (int rep = 0; rep < 200; ++rep) {
      const int n = 1 + static_cast<int>(rng.uniform_int(20));
      std::vector<EpisodeResult> set;
      double expected = 0.0;
      for (int i = 0; i < n; ++i) {
        const bool success = rng.uniform() < 0.6;
        const double p = rng.uniform(0.1, 30.0);
        const double l = rng.uniform(0.1, 30.0);
        set.push_back(result(success, p, l));
        if (success) expected += l / std::max(p, l);
      }
      expected = 100.0 * expected / n;
      const double spl = harness::compute_spl(set);
      CHECK(spl == doctest::Approx(expected).epsilon(1e-12));
      CHECK(spl <= harness::compute_sr(set) + 1e-12);
    }
  }
}

TEST_CASE("evaluation reports per-band seed sweeps deterministically") {
  const VoxelWorld world = worldgen::make_ground_world(12.0, 12.0);
  TaskSuite suite;
  suite.world_tag = "flat12";
  suite.tasks = {make_task(world, 2.55, 2.55, 0.0, 6.05, 2.55, "near"),
                 make_task(world, 2.55, 4.05, 0.5, 6.55, 5.05, "near"),
                 make_task(world, 2.05, 6.05, 0.0, 9.55, 8.05, "far"),
                 make_task(world, 9.55, 2.55, 3.0, 2.55, 6.55, "far")};

  harness::EvalRequest request;
  request.policies.push_back(harness::make_policy_entry("oracle"));
  request.policies.push_back({"idle", [] { return std::make_unique<NullPolicy>(); }});
  request.seeds = {1, 2};

  const harness::MetricsReport report = harness::evaluate(world, suite, request);
  REQUIRE(report.policies.size() == 2);
  const auto& oracle = report.policies[0];
  const auto& idle = report.policies[1];
  CHECK(oracle.name == "oracle");
  REQUIRE(oracle.bands.size() == 2);
  CHECK(oracle.bands[0].band == "near");
  CHECK(oracle.bands[0].tasks == 2);
  CHECK(oracle.bands[1].band == "far");
  CHECK(oracle.overall.band == "all");
  CHECK(oracle.overall.tasks == 4);
  REQUIRE(oracle.overall.per_seed.size() == 2);

  // The reference controller clears a flat world; the idle policy never moves.
  CHECK(oracle.overall.sr_mean == doctest::Approx(100.0));
  CHECK(oracle.overall.spl_mean >= 90.0);
  CHECK(idle.overall.sr_mean == 0.0);
  CHECK(idle.overall.spl_mean == 0.0);
  CHECK(idle.collisions.zero_fraction == doctest::Approx(1.0));
  CHECK(idle.collisions.episodes == 8);

  for (const auto& policy_report : report.policies) {
    for (const auto& band : policy_report.bands) {
      CHECK(band.spl_mean <= band.sr_mean + 1e-12);
      for (const auto& cell : band.per_seed) CHECK(cell.spl <= cell.sr + 1e-12);
    }
    CHECK(policy_report.overall.spl_mean <= policy_report.overall.sr_mean + 1e-12);
  }

  const std::string bytes = harness::metrics_to_json(report);
  CHECK(harness::metrics_to_json(harness::evaluate(world, suite, request)) == bytes);
  harness::EvalRequest parallel = request;
  parallel.workers = 3;
  CHECK(harness::metrics_to_json(harness::evaluate(world, suite, parallel)) == bytes);
}

TEST_CASE("policy factory covers the benchmark roster") {
  for (const char* name :
       {"oracle", "oracle-rigid", "bug", "wallfollow", "wallfollow-right", "reactive"}) {
    const harness::PolicyEntry entry = harness::make_policy_entry(name);
    CHECK(entry.name == name);
    CHECK(entry.make() != nullptr);
  }
  policy::ReactiveParams tuned;
  tuned.cruise = 1.1;
  const harness::PolicyEntry entry = harness::make_policy_entry("reactive", &tuned);
  auto built = entry.make();
  CHECK(dynamic_cast<policy::ReactivePolicy*>(built.get())->params().cruise == 1.1);
  CHECK_THROWS_AS(harness::make_policy_entry("ppo"), ConfigError);
}

TEST_CASE("trajectory sink records one labeled row per tick") {
  const VoxelWorld world = worldgen::make_ground_world(10.0, 6.0);
  const Task task = make_task(world, 2.55, 3.05, 0.0, 7.55, 3.05);
  EpisodeConfig config;
  config.max_ticks = 5;
  std::ostringstream sink;
  EpisodeSetup setup;
  setup.trajectory = &sink;
  NullPolicy idle;
  (void)harness::run_episode(world, task, idle, config, Seed{21}, setup);

  std::istringstream lines(sink.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == harness::trajectory_csv_header());
  const auto columns = [](const std::string& s) {
    return 1 + static_cast<int>(std::count(s.begin(), s.end(), ','));
  };
  const int header_cols = columns(line);
  int rows = 0;
  double breakdown_checked = 0;
  while (std::getline(lines, line)) {
    CHECK(columns(line) == header_cols);
    // The last eleven fields are the ten reward terms and their sum.
    std::vector<double> fields;
    std::istringstream fs(line);
    std::string cell;
    while (std::getline(fs, cell, ',')) fields.push_back(std::stod(cell));
    double sum = 0.0;
    for (std::size_t i = fields.size() - 11; i + 1 < fields.size(); ++i) sum += fields[i];
    CHECK(fields.back() == doctest::Approx(sum).epsilon(1e-9));
    ++breakdown_checked;
    ++rows;
  }
  CHECK(rows == 5);
  CHECK(breakdown_checked == 5);

  std::ostringstream sink2;
  EpisodeSetup setup2;
  setup2.trajectory = &sink2;
  NullPolicy idle2;
  (void)harness::run_episode(world, task, idle2, config, Seed{21}, setup2);
  CHECK(sink2.str() == sink.str());
}

TEST_CASE("controller training runs both arms reproducibly") {
  const VoxelWorld world = worldgen::make_ground_world(10.0, 8.0);
  TaskSuite suite;
  suite.tasks = {make_task(world, 2.55, 3.05, 0.0, 6.05, 3.05, "near"),
                 make_task(world, 2.55, 5.05, 0.0, 7.05, 5.55, "near")};

  harness::TrainConfig config;
  config.cem.population = 4;
  config.cem.iterations = 2;
  config.episode.max_ticks = 150;
  config.pgcl = true;

  const harness::TrainOutput a = harness::train_reactive(world, suite, config, Seed{8});
  REQUIRE(a.history.mean_return.size() == 2);
  REQUIRE(a.history.best_return.size() == 2);
  REQUIRE(a.levels.size() == 2);
  CHECK(a.levels[0] == 1);
  CHECK(a.params.cruise >= 0.3);
  CHECK(a.params.cruise <= 1.2);
  CHECK(a.params.attract_gain >= 0.0);

  const harness::TrainOutput b = harness::train_reactive(world, suite, config, Seed{8});
  CHECK(b.history.final_mean == a.history.final_mean);
  CHECK(b.history.best_score == a.history.best_score);

  config.pgcl = false;
  const harness::TrainOutput c = harness::train_reactive(world, suite, config, Seed{8});
  REQUIRE(c.levels.size() == 2);
  CHECK(c.levels[0] == 1);
  CHECK(c.levels[1] == 1);

  harness::TrainConfig empty_config = config;
  const TaskSuite no_tasks;
  CHECK_THROWS_AS(harness::train_reactive(world, no_tasks, empty_config, Seed{1}), ConfigError);
}

TEST_CASE("learned parameters serialize and reload") {
  harness::TrainOutput output;
  output.params.attract_gain = 1.25;
  output.params.cruise = 0.9;
  output.history.best_score = 3.5;
  output.history.mean_return = {1.0, 2.0};
  output.history.best_return = {2.0, 3.5};
  output.levels = {1, 2};

  const std::string text = harness::params_to_json(output);
  const policy::ReactiveParams loaded = harness::params_from_json(text);
  CHECK(loaded.attract_gain == 1.25);
  CHECK(loaded.cruise == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(loaded.falloff == output.params.falloff);

  CHECK_THROWS_AS(harness::params_from_json("not json"), ConfigError);
  CHECK_THROWS_AS(harness::params_from_json("{\"schema\":\"other\"}"), ConfigError);
}

TEST_CASE("config document round-trips with strict key checking") {
  const harness::HarnessConfig defaults;
  const std::string doc = harness::default_config_toml();

  const harness::HarnessConfig parsed = harness::parse_config(doc);
  CHECK(harness::config_to_toml(parsed) == doc);
  CHECK(parsed.weights.w1 == defaults.weights.w1);
  CHECK(parsed.executor.tau == defaults.executor.tau);
  CHECK(parsed.body.length == defaults.body.length);
  CHECK(parsed.cem.population == defaults.cem.population);

  SUBCASE("partial overrides keep the rest at defaults") {
    const harness::HarnessConfig c =
        harness::parse_config("[reward]\nw1 = 7.5\n\n[executor]\ndelay_ticks = 3\n");
    CHECK(c.weights.w1 == 7.5);
    CHECK(c.weights.w2 == defaults.weights.w2);
    CHECK(c.executor.delay_ticks == 3);
    CHECK(c.max_ticks == defaults.max_ticks);
  }

  SUBCASE("comments and whitespace are tolerated") {
    const harness::HarnessConfig c = harness::parse_config(
        "# leading note\n[episode]  # section note\n  max_ticks = 600  # inline\n\n");
    CHECK(c.max_ticks == 600);
  }

  SUBCASE("malformed input is rejected with a line number") {
    CHECK_THROWS_WITH_AS(harness::parse_config("[reward]\nbogus = 1\n"),
                         doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config("[reward]\nw1 = true\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config("[executor]\ntau = [1, 2]\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config("w1 = 1\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config("[reward\nw1 = 1\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config("[reward]\nw1 = abc\n"), ConfigError);
    CHECK_THROWS_AS(harness::parse_config("[episode]\nmax_ticks = 1.5\n"), ConfigError);
  }

  SUBCASE("episode slice carries the protocol fields") {
    harness::HarnessConfig hc;
    hc.max_ticks = 77;
    hc.v_des_max = 0.9;
    hc.visit_cell = 0.25;
    const EpisodeConfig e = harness::episode_config(hc);
    CHECK(e.max_ticks == 77);
    CHECK(e.v_des_max == 0.9);
    CHECK(e.visit_cell == 0.25);
    CHECK(e.weights.w10 == hc.weights.w10);
  }
}

TEST_CASE("shipped default config matches the generated document") {
  const std::string path = std::string(VOXNAV_SOURCE_DIR) + "/configs/default.toml";
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing " << path);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == harness::default_config_toml());
}
