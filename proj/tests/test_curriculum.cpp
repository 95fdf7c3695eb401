#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "voxnav/core/errors.hpp"
#include "voxnav/core/rng.hpp"
#include "voxnav/curriculum/curriculum.hpp"
#include "voxnav/curriculum/planner.hpp"

using namespace voxnav;
using namespace voxnav::curriculum;

namespace {

VoxelWorld floored(int nx, int ny) {
  VoxelWorld w(nx, ny, 21, 0.1, 0.0, 0.0, -0.1);
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy) w.set_occupied(ix, iy, 0, true);
  return w;
}

GlobalPath straight_path(double len) {
  GlobalPath p;
  p.points = {{0.5, 0.5}, {0.5 + len, 0.5}};
  p.notes = {PathAnnotation{}, PathAnnotation{}};
  p.arclength = {0.0, len};
  return p;
}

}  // namespace

TEST_CASE("empty world routes on the diagonal at grid-optimal length") {
  auto w = floored(50, 50);
  auto map = build_traversability(w);
  CHECK_FALSE(map.has_gvd);  // only the border generator: no skeleton
  auto path = plan_global_path(map, 0.5, 0.5, 4.5, 4.5, PlannerConfig{});
  CHECK(path.length() == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(0.05));
  CHECK(shortest_path_length(map, 0.5, 0.5, 4.5, 4.5, PlannerConfig{}) ==
        doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("wall with a doorway: optimal search matches plain Dijkstra exactly") {
  auto w = floored(80, 80);
  w.fill_box(0.0, 4.0, 0.0, 3.5, 4.2, 2.0);  // wall with a 1 m door at x [3.5, 4.5]
  w.fill_box(4.5, 4.0, 0.0, 8.0, 4.2, 2.0);
  auto map = build_traversability(w);
  const auto astar = shortest_grid_cost(map, 2.0, 2.0, 2.0, 6.5, true);
  const auto oracle = dijkstra_grid_cost(map, 2.0, 2.0, 2.0, 6.5, true);
  CHECK(astar == oracle);
  CHECK(astar.meters(0.1) == oracle.meters(0.1));  // bit-identical by the same formula
  // The door forces a detour well beyond the straight-line distance.
  CHECK(astar.meters(0.1) > 5.0);
}

TEST_CASE("optimal cost matches the Dijkstra reference on random clutter") {
  Rng rng(Seed{71}, "planner-fuzz");
  for (int trial = 0; trial < 8; ++trial) {
    auto w = floored(60, 60);
    for (int b = 0; b < 10; ++b) {
      const double x = rng.uniform(0.5, 5.0), y = rng.uniform(0.5, 5.0);
      w.fill_box(x, y, 0.0, x + rng.uniform(0.2, 1.0), y + rng.uniform(0.2, 1.0), 2.0);
    }
    auto map = build_traversability(w);
    for (int q = 0; q < 5; ++q) {
      const double sx = rng.uniform(0.3, 5.7), sy = rng.uniform(0.3, 5.7);
      const double gx = rng.uniform(0.3, 5.7), gy = rng.uniform(0.3, 5.7);
      bool a_ok = true, d_ok = true;
      GridCost a{}, d{};
      try {
        a = shortest_grid_cost(map, sx, sy, gx, gy, true);
      } catch (const PlanningError&) {
        a_ok = false;
      }
      try {
        d = dijkstra_grid_cost(map, sx, sy, gx, gy, true);
      } catch (const PlanningError&) {
        d_ok = false;
      }
      CHECK(a_ok == d_ok);
      if (a_ok) CHECK(a == d);
    }
  }
}

TEST_CASE("pillar islands produce a medial skeleton route with clearance") {
  auto w = floored(100, 100);
  w.fill_box(3.0, 2.0, 0.0, 3.6, 2.6, 2.0);
  w.fill_box(6.0, 6.0, 0.0, 6.6, 6.6, 2.0);
  w.fill_box(3.0, 7.0, 0.0, 3.6, 7.6, 2.0);
  auto map = build_traversability(w);
  CHECK(map.has_gvd);
  auto path = plan_global_path(map, 1.0, 1.0, 9.0, 9.0, PlannerConfig{});
  CHECK(path.length() >= std::hypot(8.0, 8.0) - 1e-9);
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const int ix = static_cast<int>(std::floor(path.points[i][0] / 0.1));
    const int iy = static_cast<int>(std::floor(path.points[i][1] / 0.1));
    CHECK(map.passable(ix, iy, true));
  }
}

TEST_CASE("a crawl band is annotated crouch; a slot is annotated roll") {
  auto w = floored(80, 80);
  // Band of slab 0.3 m over the ground across the whole width at x [4, 4.6].
  w.fill_box(4.0, 0.0, 0.3, 4.6, 8.0, 0.8);
  auto map = build_traversability(w);
  auto path = plan_global_path(map, 2.0, 4.0, 6.0, 4.0, PlannerConfig{});
  const double mid_clearance = path.min_clearance(1.5, path.length() - 1.5);
  CHECK(mid_clearance == doctest::Approx(0.3).epsilon(1e-6));
  bool saw_crouch = false;
  for (const auto& n : path.notes) saw_crouch |= (n.posture == PostureClass::kCrouch);
  CHECK(saw_crouch);
  // Standing planner refuses the band outright: the whole width is blocked.
  CHECK_THROWS_AS(
      [&] {
        PlannerConfig nominal;
        nominal.allow_posture = false;
        plan_global_path(w, 2.0, 4.0, 6.0, 4.0, nominal);
      }(),
      PlanningError);
}

TEST_CASE("narrow slot annotation and posture-off refusal") {
  auto w = floored(80, 80);
  w.fill_box(4.0, 0.0, 0.0, 4.6, 3.8, 2.0);  // slot 0.3 m wide at y [3.8, 4.1]
  w.fill_box(4.0, 4.1, 0.0, 4.6, 8.0, 2.0);
  auto map = build_traversability(w);
  auto path = plan_global_path(map, 2.0, 4.0, 6.0, 4.0, PlannerConfig{});
  const double mid_gap = path.min_gap(1.0, path.length() - 1.0);
  CHECK(mid_gap < 0.34);
  bool saw_roll = false;
  for (const auto& n : path.notes) saw_roll |= (n.posture == PostureClass::kRoll);
  CHECK(saw_roll);
  PlannerConfig nominal;
  nominal.allow_posture = false;
  CHECK_THROWS_AS(plan_global_path(w, 2.0, 4.0, 6.0, 4.0, nominal), PlanningError);
}

TEST_CASE("start equal to goal degenerates to a zero-length route") {
  auto w = floored(30, 30);
  auto path = plan_global_path(w, 1.5, 1.5, 1.5, 1.5, PlannerConfig{});
  CHECK(path.length() == 0.0);
  auto goals = sample_subgoals(path, 1.0, w);
  REQUIRE(goals.size() == 1);
  CHECK(goals[0].x == doctest::Approx(1.5));
}

TEST_CASE("sub-goal sampling walks the route at the requested spacing") {
  auto w = floored(60, 60);
  const auto path = straight_path(3.5);
  auto goals = sample_subgoals(path, 1.0, w);
  REQUIRE(goals.size() == 4);  // 1, 2, 3 m plus the final goal
  CHECK(goals[0].x == doctest::Approx(1.5));
  CHECK(goals[2].x == doctest::Approx(3.5));
  CHECK(goals[3].x == doctest::Approx(4.0));
  CHECK(goals[3].z == doctest::Approx(0.0));

  CHECK(sample_subgoals(path, 4.0, w).size() == 1);  // only the goal
  auto two = sample_subgoals(straight_path(2.0), 1.0, w);
  REQUIRE(two.size() == 2);  // the 2.0 m mark is the goal itself, not doubled
  CHECK(two[0].x == doctest::Approx(1.5));
  CHECK(two[1].x == doctest::Approx(2.5));
}

TEST_CASE("curriculum ladder: spacing grows, final level graduates after three") {
  auto w = floored(60, 60);
  const auto path = straight_path(3.5);
  Curriculum cur(&path, &w, CurriculumConfig{});
  CHECK(cur.level() == 1);
  CHECK(cur.final_level() == 4);  // spacing 4 first exceeds 3.5
  CHECK(cur.goals().size() == 4);

  CHECK(cur.advance_level(true) == Curriculum::Outcome::kAdvance);
  CHECK(cur.level() == 2);
  CHECK(cur.spacing() == 2.0);
  CHECK(cur.goals().size() == 2);

  CHECK(cur.advance_level(true) == Curriculum::Outcome::kAdvance);
  CHECK(cur.advance_level(true) == Curriculum::Outcome::kAdvance);
  CHECK(cur.level() == 4);
  CHECK(cur.goals().size() == 1);  // only the final goal remains

  CHECK(cur.advance_level(true) == Curriculum::Outcome::kStay);
  CHECK(cur.advance_level(true) == Curriculum::Outcome::kStay);
  CHECK(cur.advance_level(false) == Curriculum::Outcome::kStay);  // streak broken
  CHECK(cur.consecutive_final_successes() == 0);
  CHECK(cur.level() == 4);  // no demotion
  CHECK(cur.advance_level(true) == Curriculum::Outcome::kStay);
  CHECK(cur.advance_level(true) == Curriculum::Outcome::kStay);
  CHECK(cur.advance_level(true) == Curriculum::Outcome::kGraduate);
}

TEST_CASE("observe hands out sub-goals and advances strictly inside 0.1 m") {
  auto w = floored(60, 60);
  const auto path = straight_path(2.0);
  Curriculum cur(&path, &w, CurriculumConfig{});
  auto g = cur.observe(0.5, 0.5);
  CHECK(g.x == doctest::Approx(1.5));
  g = cur.observe(1.4, 0.5);  // distance exactly 0.1: no arrival
  CHECK(g.x == doctest::Approx(1.5));
  CHECK(cur.next_index() == 0);
  g = cur.observe(1.45, 0.5);  // 0.05 away: arrived, next goal handed out
  CHECK(g.x == doctest::Approx(2.5));
  CHECK(cur.next_index() == 1);
  g = cur.observe(2.48, 0.5);
  CHECK(cur.sequence_complete());
  CHECK(g.x == doctest::Approx(2.5));  // final goal keeps being observed
}

TEST_CASE("discounted return worked examples") {
  const double three[] = {1.0, 1.0, 1.0};
  CHECK(discounted_return(three, 0.5) == doctest::Approx(1.75).epsilon(1e-12));
  const double single[] = {0.37};
  CHECK(discounted_return(single, 0.99) == doctest::Approx(0.37).epsilon(1e-12));
  std::vector<double> flat(100, 0.75);
  const double closed = 0.75 * (1.0 - std::pow(0.99, 100)) / (1.0 - 0.99);
  CHECK(discounted_return(flat, 0.99) == doctest::Approx(closed).epsilon(1e-9));
}
