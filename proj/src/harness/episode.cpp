#include "voxnav/harness/episode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "format.hpp"
#include "voxnav/core/errors.hpp"
#include "voxnav/core/rng.hpp"
#include "voxnav/sim/observation.hpp"

namespace voxnav::harness {

namespace {

constexpr const char* kTrajectoryHeader =
    "tick,x,y,z,yaw,roll,"
    "cmd_vx,cmd_vy,cmd_wz,cmd_h,cmd_roll,"
    "ach_vx,ach_vy,ach_wz,ach_h,ach_roll,"
    "colliding,goal_x,goal_y,goal_dist,level,subgoal,"
    "r_arrival,r_visit,r_speed,r_cmd_rate,r_cmd_smooth,r_tracking,"
    "r_body_vel,r_posture,r_cmd_limit,r_collision,r_total";

void write_row(std::ostream& out, int tick, const AgentState& state, const Command& cmd,
               const curriculum::SubGoalPoint& goal, double goal_dist, int level, int subgoal,
               const reward::RewardBreakdown& br) {
  std::string row = num_str(tick);
  auto add = [&row](double v) {
    row += ',';
    row += num_str(v);
  };
  add(state.pose.x);
  add(state.pose.y);
  add(state.pose.z);
  add(state.pose.yaw);
  add(state.pose.roll);
  for (double v : cmd.channels()) add(v);
  for (double v : state.achieved.channels()) add(v);
  row += state.colliding ? ",1" : ",0";
  add(goal.x);
  add(goal.y);
  add(goal_dist);
  row += ',';
  row += num_str(level);
  row += ',';
  row += num_str(subgoal);
  for (double v : br.r) add(v);
  add(br.total);
  out << row << '\n';
}

}  // namespace

const char* trajectory_csv_header() { return kTrajectoryHeader; }

EpisodeResult run_episode(const VoxelWorld& world, const Task& task, policy::Policy& policy,
                          const EpisodeConfig& config, Seed seed, const EpisodeSetup& setup) {
  sim::Simulator simulator(config.executor, config.geometry, seed);
  AgentState state = simulator.reset(world, task.start.x, task.start.y, task.start.yaw);
  policy.reset(seed);
  const double v_des = Rng(seed, "vdes").uniform(config.v_des_min, config.v_des_max);
  reward::VisitCounter visits(config.visit_cell);

  curriculum::Curriculum* cur = setup.curriculum;
  if (cur != nullptr) cur->reset_episode();
  const double gamma = cur != nullptr ? cur->config().gamma : config.curriculum.gamma;
  const double dt = config.executor.dt;
  const int segment_timeout_ticks =
      cur != nullptr
          ? std::max(1, static_cast<int>(std::llround(cur->config().segment_timeout_s / dt)))
          : std::numeric_limits<int>::max();

  EpisodeResult out;
  out.shortest_length = task.shortest_length;
  out.v_des = v_des;

  std::vector<double> stream;  // rewards of the open segment
  int seg_index = 0;
  auto close_segment = [&](bool reached) {
    curriculum::SegmentReturn s;
    s.level = cur != nullptr ? cur->level() : 1;
    s.index = seg_index++;
    s.ticks = static_cast<int>(stream.size());
    s.value = curriculum::discounted_return(stream, gamma);
    s.reached = reached;
    out.segments.push_back(s);
    out.total_return += s.value;
    stream.clear();
  };

  Command prev;  // the simulator reset primes its queue with this same value
  Command prev2;
  if (setup.trajectory != nullptr) *setup.trajectory << trajectory_csv_header() << '\n';

  bool arrived = false;
  bool budget_hit = false;
  for (int t = 0; t < config.max_ticks; ++t) {
    curriculum::SubGoalPoint goal = task.goal;
    if (cur != nullptr) {
      goal = cur->observe(state.pose.x, state.pose.y);
      while (seg_index < cur->next_index()) close_segment(true);
      if (cur->sequence_complete()) {
        arrived = true;
        break;
      }
    }

    const sim::ObservationBundle obs =
        sim::make_observation(world, state, prev, {goal.x, goal.y, goal.z},
                              visits.count_at(state.pose.x, state.pose.y));
    policy.observe_privileged(world, setup.path, state);
    const Command cmd = policy.act(obs);
    state = simulator.step(world, state, cmd);
    out.ticks = t + 1;
    if (state.colliding) ++out.collision_ticks;

    reward::RewardInputs in;
    in.dist_to_subgoal = std::hypot(state.pose.x - goal.x, state.pose.y - goal.y);
    in.cmd = cmd;
    in.cmd_prev = prev;
    in.cmd_prev2 = prev2;
    in.achieved = state.achieved;
    in.vz = state.vz;
    in.omega_xy = state.omega_xy;
    in.v_des = v_des;
    in.colliding = state.colliding;
    const reward::RewardBreakdown br =
        reward::total(in, visits, state.pose.x, state.pose.y, config.weights, config.reward);
    stream.push_back(br.total);
    if (setup.trajectory != nullptr) {
      write_row(*setup.trajectory, t, state, cmd, goal, in.dist_to_subgoal,
                cur != nullptr ? cur->level() : 1, seg_index, br);
    }

    prev2 = prev;
    prev = cmd;

    if (!std::isfinite(state.pose.x) || !std::isfinite(state.pose.y)) break;
    if (cur == nullptr) {
      const double dist_goal =
          std::hypot(state.pose.x - task.goal.x, state.pose.y - task.goal.y);
      if (dist_goal < config.arrival_radius) {
        arrived = true;
        break;
      }
    } else if (static_cast<int>(stream.size()) >= segment_timeout_ticks) {
      budget_hit = true;
      break;
    }
    if (t + 1 == config.max_ticks) budget_hit = true;
  }

  if (cur != nullptr) {
    // The loop may have ended on the arrival tick itself; one more look lets
    // the pointer advance past any sub-goal the final step reached.
    (void)cur->observe(state.pose.x, state.pose.y);
    while (seg_index < cur->next_index()) close_segment(true);
    out.sequence_complete = cur->sequence_complete();
    if (out.sequence_complete) arrived = true;
  }
  out.final_distance = std::hypot(state.pose.x - task.goal.x, state.pose.y - task.goal.y);
  out.success = out.final_distance < config.arrival_radius;
  if (!stream.empty()) close_segment(cur == nullptr && out.success);
  out.timeout = budget_hit && !arrived;
  out.realized_length = state.cumulative_path_length;
  return out;
}

double compute_sr(std::span<const EpisodeResult> results) {
  if (results.empty()) throw ConfigError("success rate undefined over zero episodes");
  double hits = 0.0;
  for (const EpisodeResult& r : results) hits += r.success ? 1.0 : 0.0;
  return 100.0 * hits / static_cast<double>(results.size());
}

double compute_spl(std::span<const EpisodeResult> results) {
  if (results.empty()) throw ConfigError("path-length-weighted success undefined over zero episodes");
  double sum = 0.0;
  for (const EpisodeResult& r : results) {
    if (!r.success) continue;
    const double denom = std::max(r.realized_length, r.shortest_length);
    sum += denom > 0.0 ? r.shortest_length / denom : 1.0;  // arrived without moving
  }
  return 100.0 * sum / static_cast<double>(results.size());
}

}  // namespace voxnav::harness
