#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "../vendor/doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "voxnav/core/errors.hpp"
#include "voxnav/core/rng.hpp"
#include "voxnav/curriculum/planner.hpp"
#include "voxnav/policy/cem.hpp"
#include "voxnav/policy/classical.hpp"
#include "voxnav/policy/oracle.hpp"
#include "voxnav/policy/reactive.hpp"
#include "voxnav/sim/executor.hpp"
#include "voxnav/sim/observation.hpp"
#include "voxnav/worldgen/worldgen.hpp"

using namespace voxnav;
using namespace voxnav::policy;
using voxnav::curriculum::GlobalPath;
using voxnav::curriculum::plan_global_path;
using voxnav::curriculum::PostureClass;
using voxnav::curriculum::shortest_path_length;
using voxnav::sim::make_observation;
using voxnav::sim::ObservationBundle;
using voxnav::sim::Simulator;
using voxnav::worldgen::make_ground_world;

namespace {

struct RunOutcome {
  bool arrived = false;
  int ticks = 0;
  double realized = 0.0;
  int collision_ticks = 0;
  int range_violations = 0;
  double min_h_cmd = 1e9;
  double max_roll_cmd = 0.0;
  AgentState final_state;
};

// Drives one policy in the simulator the same way the evaluation loop does:
// observation, optional privileged inputs, command, step. The probe sees the
// pre-step state together with the command issued from it.
RunOutcome drive(const VoxelWorld& world, Policy& pol, double sx, double sy, double yaw,
                 std::array<double, 3> goal, int max_ticks, const GlobalPath* path = nullptr,
                 std::uint64_t seed = 1,
                 const std::function<void(const AgentState&, const Command&)>& probe = {}) {
  Simulator sim({}, {}, Seed{seed});
  AgentState st = sim.reset(world, sx, sy, yaw);
  pol.reset(Seed{seed});
  Command prev{0, 0, 0, 0.3, 0};
  RunOutcome out;
  for (int t = 0; t < max_ticks; ++t) {
    ObservationBundle obs = make_observation(world, st, prev, goal, 0);
    pol.observe_privileged(world, path, st);
    Command cmd = pol.act(obs);
    if (!command_in_range(cmd)) ++out.range_violations;
    if (probe) probe(st, cmd);
    out.min_h_cmd = std::min(out.min_h_cmd, cmd.h);
    out.max_roll_cmd = std::max(out.max_roll_cmd, std::abs(cmd.roll));
    st = sim.step(world, st, cmd);
    prev = cmd;
    ++out.ticks;
    if (st.colliding) ++out.collision_ticks;
    if (std::hypot(st.pose.x - goal[0], st.pose.y - goal[1]) < 0.2) {
      out.arrived = true;
      break;
    }
  }
  out.realized = st.cumulative_path_length;
  out.final_state = st;
  return out;
}

ObservationBundle observe_at(const VoxelWorld& world, double x, double y, double yaw,
                             std::array<double, 3> goal) {
  Simulator sim({}, {}, Seed{9});
  AgentState st = sim.reset(world, x, y, yaw);
  return make_observation(world, st, Command{0, 0, 0, 0.3, 0}, goal, 0);
}

}  // namespace

TEST_CASE("every policy clamps arbitrary observations into range") {
  Rng rng(Seed{404}, "fuzz");
  Bug2Policy bug;
  WallFollowPolicy wall;
  OraclePolicy oracle;
  ReactivePolicy reactive;
  bug.reset(Seed{1});
  wall.reset(Seed{1});
  oracle.reset(Seed{1});
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    ObservationBundle obs;
    for (auto& c : obs.m3d.cells) c = rng.uniform() < 0.3 ? 1 : 0;
    for (auto& c : obs.m25d.cells) c = static_cast<float>(rng.uniform(-1.0, 3.0));
    obs.goal_rel = {rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0), 0.0};
    obs.achieved = Command{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                           rng.uniform(-2.0, 2.0), rng.uniform(0.0, 0.5),
                           rng.uniform(-1.5, 1.5)};
    obs.prev_cmd = obs.achieved;
    std::array<double, ReactiveParams::kDim> raw;
    for (auto& v : raw) v = rng.uniform(-3.0, 3.0);
    reactive.set_params(ReactiveParams::from_vector(raw));
    for (Policy* p : {static_cast<Policy*>(&bug), static_cast<Policy*>(&wall),
                      static_cast<Policy*>(&oracle), static_cast<Policy*>(&reactive)}) {
      if (!command_in_range(p->act(obs))) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("goal seeking turns toward the goal and drives forward") {
  VoxelWorld world = make_ground_world(10.0, 10.0);
  Bug2Policy bug;
  bug.reset(Seed{3});
  ObservationBundle left = observe_at(world, 5, 5, 0.0, {7.0, 6.0, 0.3});
  Command cmd = bug.act(left);
  CHECK(cmd.wz > 0.0);
  CHECK(cmd.vx > 0.0);
  CHECK(cmd.h == doctest::Approx(0.3));

  bug.reset(Seed{3});
  ObservationBundle right = observe_at(world, 5, 5, 0.0, {7.0, 4.0, 0.3});
  cmd = bug.act(right);
  CHECK(cmd.wz < 0.0);
  CHECK(cmd.vx > 0.0);
}

TEST_CASE("clear corridor transit stays near the planner optimum") {
  VoxelWorld world = make_ground_world(12.0, 4.0);
  world.fill_box(0.0, 0.7, 0.0, 12.0, 0.9, 1.2);
  world.fill_box(0.0, 3.1, 0.0, 12.0, 3.3, 1.2);
  const double optimum = shortest_path_length(world, 1.5, 2.0, 10.5, 2.0, {});
  REQUIRE(optimum > 8.0);
  Bug2Policy bug;
  RunOutcome out = drive(world, bug, 1.5, 2.0, 0.0, {10.5, 2.0, 0.3}, 400);
  CHECK(out.arrived);
  CHECK(out.range_violations == 0);
  CHECK(out.realized <= 2.0 * optimum);
  CHECK(bug.hit_distances().empty());
}

TEST_CASE("a blocking wall engages boundary following with monotone hit points") {
  for (std::uint64_t seed : {1ULL, 2ULL}) {  // exercises both boundary sides
    CAPTURE(seed);
    VoxelWorld world = make_ground_world(12.0, 8.0);
    world.fill_box(5.0, 0.0, 0.0, 5.2, 5.5, 1.5);
    Bug2Policy bug;
    RunOutcome out = drive(world, bug, 2.0, 3.0, 0.0, {10.0, 3.0, 0.3}, 900, nullptr, seed);
    CHECK(out.arrived);
    CHECK(out.range_violations == 0);
    const auto& hits = bug.hit_distances();
    REQUIRE(!hits.empty());
    for (std::size_t i = 1; i < hits.size(); ++i) {
      CHECK(hits[i] < hits[i - 1] - 0.049);
    }
    CHECK(out.min_h_cmd == doctest::Approx(0.3));
    CHECK(out.max_roll_cmd == doctest::Approx(0.0));
  }
}

TEST_CASE("crawl-height shortcuts are never taken by the upright baseline") {
  // A wall with a crawl-height underpass in the middle; the baseline must
  // treat the underpass as solid.
  VoxelWorld world = make_ground_world(10.0, 6.0);
  auto add_wall_with_crawl = [&world](double y_end) {
    world.fill_box(5.0, 0.0, 0.0, 5.2, 2.5, 1.5);
    world.fill_box(5.0, 2.5, 0.30, 5.2, 3.5, 1.5);  // 0.3 m of clearance beneath
    world.fill_box(5.0, 3.5, 0.0, 5.2, y_end, 1.5);
  };

  SUBCASE("no upright route: wanders without crouching, never arrives") {
    add_wall_with_crawl(6.0);
    Bug2Policy bug;
    RunOutcome out = drive(world, bug, 2.0, 3.0, 0.0, {8.0, 3.0, 0.3}, 600);
    CHECK(!out.arrived);
    CHECK(out.min_h_cmd == doctest::Approx(0.3));
    CHECK(out.max_roll_cmd == doctest::Approx(0.0));
  }

  SUBCASE("upright detour exists: takes it instead of the shortcut") {
    add_wall_with_crawl(4.5);  // open walking gap along y in [4.5, 6)
    Bug2Policy bug;
    RunOutcome out = drive(world, bug, 2.0, 3.0, 0.0, {8.0, 3.0, 0.3}, 900);
    CHECK(out.arrived);
    CHECK(out.min_h_cmd == doctest::Approx(0.3));
    CHECK(out.realized > 7.0);  // visibly longer than the 6 m straight line
  }
}

TEST_CASE("wall follower holds its standoff beside a long wall") {
  VoxelWorld world = make_ground_world(20.0, 6.0);
  world.fill_box(0.0, 3.0, 0.0, 20.0, 3.2, 1.5);
  WallFollowPolicy wall(FollowSide::kLeft);
  std::vector<double> face_dist;
  int tick = 0;
  auto probe = [&](const AgentState& st, const Command&) {
    if (tick++ >= 80) face_dist.push_back(3.0 - st.pose.y);
  };
  RunOutcome out = drive(world, wall, 2.0, 2.4, 0.0, {50.0, 50.0, 0.3}, 220, nullptr, 5, probe);
  CHECK(!out.arrived);
  CHECK(out.range_violations == 0);
  REQUIRE(face_dist.size() > 100);
  double mean = 0.0;
  for (double d : face_dist) {
    CHECK(d > 0.2);
    CHECK(d < 0.6);
    mean += d;
  }
  mean /= static_cast<double>(face_dist.size());
  CHECK(mean > 0.28);
  CHECK(mean < 0.52);
  CHECK(out.final_state.pose.x > 7.0);  // made steady progress along the wall
}

TEST_CASE("closed room: spiral finds a wall, then loops until timeout") {
  VoxelWorld world = make_ground_world(8.0, 8.0);
  world.fill_box(0.0, 0.0, 0.0, 8.0, 0.2, 1.2);
  world.fill_box(0.0, 7.8, 0.0, 8.0, 8.0, 1.2);
  world.fill_box(0.0, 0.0, 0.0, 0.2, 8.0, 1.2);
  world.fill_box(7.8, 0.0, 0.0, 8.0, 8.0, 1.2);
  WallFollowPolicy wall(FollowSide::kRight);
  std::vector<double> late_wall_dist;
  int tick = 0;
  auto probe = [&](const AgentState& st, const Command&) {
    if (tick++ >= 400) {
      late_wall_dist.push_back(std::min(std::min(st.pose.x - 0.2, 7.8 - st.pose.x),
                                        std::min(st.pose.y - 0.2, 7.8 - st.pose.y)));
    }
  };
  RunOutcome out = drive(world, wall, 4.0, 4.0, 0.0, {100.0, 100.0, 0.3}, 500, nullptr, 11, probe);
  CHECK(!out.arrived);
  CHECK(out.range_violations == 0);
  CHECK(out.realized > 15.0);  // kept moving the whole time
  REQUIRE(!late_wall_dist.empty());
  for (double d : late_wall_dist) {
    CHECK(d > 0.15);
    CHECK(d < 1.0);
  }
}

TEST_CASE("privileged reference tracks a straight route efficiently and safely") {
  VoxelWorld world = make_ground_world(12.0, 4.0);
  GlobalPath path = plan_global_path(world, 1.0, 2.0, 11.0, 2.0, {});
  OraclePolicy oracle;
  RunOutcome out = drive(world, oracle, 1.0, 2.0, 0.0, {11.0, 2.0, 0.3}, 400, &path);
  CHECK(out.arrived);
  CHECK(out.collision_ticks == 0);
  CHECK(out.range_violations == 0);
  const double optimum = shortest_path_length(world, 1.0, 2.0, 11.0, 2.0, {});
  CHECK(optimum / out.realized >= 0.9);
}

TEST_CASE("privileged reference crouches under a low slab and recovers") {
  VoxelWorld world = make_ground_world(12.0, 4.0);
  world.fill_box(5.0, 0.0, 0.35, 6.5, 4.0, 1.5);  // voxelizes to a 0.30 m ceiling
  GlobalPath path = plan_global_path(world, 1.0, 2.0, 11.0, 2.0, {});
  bool annotated_crouch = false;
  for (const auto& note : path.notes) {
    if (note.posture == PostureClass::kCrouch) annotated_crouch = true;
  }
  CHECK(annotated_crouch);

  OraclePolicy oracle;
  double max_h_near_slab = 0.0;
  double last_h = 0.0;
  auto probe = [&](const AgentState& st, const Command& cmd) {
    if (st.pose.x > 4.6 && st.pose.x < 6.6) max_h_near_slab = std::max(max_h_near_slab, cmd.h);
    last_h = cmd.h;
  };
  RunOutcome out = drive(world, oracle, 1.0, 2.0, 0.0, {11.0, 2.0, 0.3}, 600, &path, 1, probe);
  CHECK(out.arrived);
  CHECK(out.collision_ticks == 0);
  CHECK(out.range_violations == 0);
  CHECK(max_h_near_slab <= 0.271);
  CHECK(max_h_near_slab >= kHeightMin);
  CHECK(last_h == doctest::Approx(0.3));  // stood back up after the slab
}

TEST_CASE("privileged reference rolls through a narrow slot") {
  VoxelWorld world = make_ground_world(8.0, 8.0);
  world.fill_box(4.0, 0.0, 0.0, 4.6, 3.8, 1.5);
  world.fill_box(4.0, 4.1, 0.0, 4.6, 8.0, 1.5);  // 0.3 m slot centered on y = 3.95
  GlobalPath path = plan_global_path(world, 2.0, 3.95, 6.0, 3.95, {});
  bool annotated_roll = false;
  for (const auto& note : path.notes) {
    if (note.posture == PostureClass::kRoll) annotated_roll = true;
  }
  CHECK(annotated_roll);

  OraclePolicy oracle;
  double min_h_while_rolled = 1e9;
  auto probe = [&](const AgentState&, const Command& cmd) {
    if (std::abs(cmd.roll) > 0.5) min_h_while_rolled = std::min(min_h_while_rolled, cmd.h);
  };
  RunOutcome out = drive(world, oracle, 2.0, 3.95, 0.0, {6.0, 3.95, 0.3}, 600, &path, 1, probe);
  CHECK(out.arrived);
  CHECK(out.range_violations == 0);
  CHECK(out.max_roll_cmd == doctest::Approx(kRollLimit));
  CHECK(min_h_while_rolled >= 0.179);
}

TEST_CASE("privileged reference holds still on a degenerate route") {
  VoxelWorld world = make_ground_world(6.0, 6.0);
  GlobalPath path = plan_global_path(world, 3.0, 3.0, 3.0, 3.0, {});
  OraclePolicy oracle;
  oracle.reset(Seed{1});
  Simulator sim({}, {}, Seed{1});
  AgentState st = sim.reset(world, 3.0, 3.0, 0.0);
  ObservationBundle obs = make_observation(world, st, Command{0, 0, 0, 0.3, 0}, {3.0, 3.0, 0.3}, 0);

  Command idle = oracle.act(obs);  // no privileged inputs offered yet
  CHECK(idle.vx == doctest::Approx(0.0));
  CHECK(idle.wz == doctest::Approx(0.0));

  oracle.observe_privileged(world, &path, st);
  Command held = oracle.act(obs);
  CHECK(held.vx == doctest::Approx(0.0));
  CHECK(held.vy == doctest::Approx(0.0));
  CHECK(held.wz == doctest::Approx(0.0));
  CHECK(held.h == doctest::Approx(0.3));
}

TEST_CASE("rigid ablation of the reference fails where crouching is required") {
  VoxelWorld world = make_ground_world(12.0, 4.0);
  world.fill_box(5.0, 0.0, 0.35, 6.5, 4.0, 1.5);
  GlobalPath path = plan_global_path(world, 1.0, 2.0, 11.0, 2.0, {});
  OraclePolicy rigid(OracleOptions{.posture_enabled = false});
  CHECK(rigid.name() == "oracle-rigid");
  RunOutcome out = drive(world, rigid, 1.0, 2.0, 0.0, {11.0, 2.0, 0.3}, 300, &path);
  CHECK(!out.arrived);
  CHECK(out.min_h_cmd == doctest::Approx(0.3));
  CHECK(out.collision_ticks > 0);  // kept pushing against the slab edge
  CHECK(out.final_state.pose.x < 5.1);
}

TEST_CASE("potential field points straight at the goal when nothing obstructs") {
  VoxelWorld world = make_ground_world(10.0, 10.0);
  ReactivePolicy reactive;
  reactive.reset(Seed{1});
  ObservationBundle obs = observe_at(world, 5, 5, 0.0, {7.0, 6.0, 0.3});
  Command cmd = reactive.act(obs);
  CHECK(std::atan2(cmd.vy, cmd.vx) == doctest::Approx(std::atan2(1.0, 2.0)).epsilon(1e-6));
  CHECK(cmd.wz > 0.0);
  CHECK(cmd.h == doctest::Approx(0.3));
  CHECK(cmd.roll == doctest::Approx(0.0));
}

TEST_CASE("potential field repulsion cancels between symmetric walls") {
  VoxelWorld world = make_ground_world(10.0, 5.0);
  world.fill_box(0.0, 0.8, 0.0, 10.0, 1.0, 1.2);
  world.fill_box(0.0, 3.1, 0.0, 10.0, 3.3, 1.2);
  // Mid-gap position 2.05 keeps the window's sample points on voxel centers,
  // exactly symmetric about both wall faces.
  ReactivePolicy reactive;
  reactive.reset(Seed{1});
  ObservationBundle centered = observe_at(world, 2.0, 2.05, 0.0, {8.0, 2.05, 0.3});
  Command cmd = reactive.act(centered);
  CHECK(std::abs(cmd.vy) < 0.02);
  CHECK(cmd.vx > 0.2);

  ObservationBundle offset = observe_at(world, 2.0, 1.65, 0.0, {8.0, 1.65, 0.3});
  cmd = reactive.act(offset);
  CHECK(cmd.vy > 0.01);  // pushed away from the nearer south wall
}

TEST_CASE("potential field crouches under an approaching ceiling") {
  VoxelWorld world = make_ground_world(12.0, 4.0);
  world.fill_box(5.0, 0.0, 0.35, 6.5, 4.0, 1.5);
  ReactivePolicy reactive;
  reactive.reset(Seed{1});
  ObservationBundle obs = observe_at(world, 4.6, 2.0, 0.0, {11.0, 2.0, 0.3});
  Command cmd = reactive.act(obs);
  CHECK(cmd.h == doctest::Approx(0.22).epsilon(0.05));
  CHECK(cmd.h < 0.3);
}

TEST_CASE("potential field rolls at a narrow slot") {
  VoxelWorld world = make_ground_world(8.0, 8.0);
  world.fill_box(4.0, 0.0, 0.0, 4.6, 3.8, 1.5);
  world.fill_box(4.0, 4.1, 0.0, 4.6, 8.0, 1.5);
  ReactivePolicy reactive;
  reactive.reset(Seed{1});
  ObservationBundle obs = observe_at(world, 3.8, 3.95, 0.0, {6.0, 3.95, 0.3});
  Command cmd = reactive.act(obs);
  CHECK(cmd.roll == doctest::Approx(kRollLimit));
  CHECK(cmd.h >= 0.179);
}

TEST_CASE("parameter vector round-trip clamps into the valid box") {
  std::array<double, ReactiveParams::kDim> raw = {-1.0, 5.0, 9.0, 0.0, 2.0, 7.0};
  ReactiveParams p = ReactiveParams::from_vector(raw);
  CHECK(p.attract_gain == doctest::Approx(0.0));
  CHECK(p.repulse_gain == doctest::Approx(5.0));
  CHECK(p.falloff == doctest::Approx(2.0));
  CHECK(p.crouch_trigger == doctest::Approx(0.1));
  CHECK(p.roll_trigger == doctest::Approx(1.0));
  CHECK(p.cruise == doctest::Approx(1.2));
  auto v = ReactiveParams{}.to_vector();
  ReactiveParams rt = ReactiveParams::from_vector(v);
  CHECK(rt.to_vector() == v);
}

TEST_CASE("cross-entropy search converges on a quadratic objective") {
  CEMConfig cfg;
  cfg.population = 16;
  cfg.elite_fraction = 0.25;
  cfg.iterations = 30;
  cfg.init_mean = {0.0, 0.0};
  cfg.init_std = {1.0, 1.0};
  CHECK(cem_elite_count(cfg) == 4);

  auto eval = [](std::span<const double> v, int, int) {
    const double a = v[0] - 0.7, b = v[1] + 0.3;
    return -(a * a + b * b);
  };
  CEMResult res = cem_optimize(eval, cfg, Seed{77});
  REQUIRE(res.final_mean.size() == 2);
  CHECK(std::abs(res.final_mean[0] - 0.7) < 0.05);
  CHECK(std::abs(res.final_mean[1] + 0.3) < 0.05);
  CHECK(res.best_score > -0.01);
  REQUIRE(res.mean_return.size() == 30);
  REQUIRE(res.best_return.size() == 30);
  for (std::size_t i = 1; i < res.best_return.size(); ++i) {
    CHECK(res.best_return[i] >= res.best_return[i - 1] - 1e-12);
  }

  CEMResult res2 = cem_optimize(eval, cfg, Seed{77});
  CHECK(res2.best == res.best);
  CHECK(res2.mean_return == res.mean_return);
  CEMResult other = cem_optimize(eval, cfg, Seed{78});
  CHECK(other.mean_return != res.mean_return);
}

TEST_CASE("cross-entropy search rejects invalid settings") {
  auto eval = [](std::span<const double>, int, int) { return 0.0; };
  CEMConfig cfg;
  cfg.init_mean = {0.0};
  cfg.init_std = {1.0};

  CEMConfig bad = cfg;
  bad.elite_fraction = 1.0;
  CHECK_THROWS_AS(cem_optimize(eval, bad, Seed{1}), ConfigError);
  bad = cfg;
  bad.population = 1;
  CHECK_THROWS_AS(cem_optimize(eval, bad, Seed{1}), ConfigError);
  bad = cfg;
  bad.init_std = {1.0, 1.0};
  CHECK_THROWS_AS(cem_optimize(eval, bad, Seed{1}), ConfigError);
  bad = cfg;
  bad.iterations = 0;
  CHECK_THROWS_AS(cem_optimize(eval, bad, Seed{1}), ConfigError);
}

TEST_CASE("controller tuning wrapper seeds defaults and returns clamped parameters") {
  CEMConfig cfg;
  cfg.population = 12;
  cfg.elite_fraction = 0.25;
  cfg.iterations = 15;
  auto eval = [](const ReactiveParams& p, int, int) {
    const double a = p.cruise - 1.0, b = p.attract_gain - 1.2;
    return -(a * a + b * b);
  };
  TrainResult res = cem_train(eval, cfg, Seed{5});
  CHECK(std::abs(res.params.cruise - 1.0) < 0.15);
  CHECK(std::abs(res.params.attract_gain - 1.2) < 0.15);
  CHECK(res.history.mean_return.size() == 15);
  CHECK(res.params.cruise >= 0.3);
  CHECK(res.params.cruise <= 1.2);
}
