#include <cmath>

#include "voxnav/core/angles.hpp"
#include "voxnav/sim/executor.hpp"

namespace voxnav::sim {

AgentState Simulator::reset(const VoxelWorld& world, double x, double y, double yaw,
                            const Command& initial) {
  queue_.clear();
  for (int i = 0; i < params_.delay_ticks; ++i) queue_.push_back(initial);
  AgentState state;
  state.achieved = initial;
  state.pose = Pose{x, y, world.ground_at(x, y) + initial.h, wrap_angle(yaw), initial.roll};
  state.colliding = check_collision(world, x, y, state.pose.yaw, initial.h, initial.roll, geom_);
  return state;
}

AgentState Simulator::step(const VoxelWorld& world, const AgentState& state, const Command& cmd) {
  const double dt = params_.dt;

  // Delay queue: apply the command issued delay_ticks ago.
  queue_.push_back(cmd.clamped());
  const Command applied = queue_.front();
  if (static_cast<int>(queue_.size()) > params_.delay_ticks) queue_.pop_front();

  // First-order lag toward the applied command, with exploration noise.
  const auto a_old = state.achieved.channels();
  const auto c = applied.channels();
  std::array<double, 5> a_new;
  for (int i = 0; i < 5; ++i) {
    const double alpha = 1.0 - std::exp(-dt / params_.tau[i]);
    const double eps = params_.noise_std[i] * std::sqrt(dt) * rng_.normal();
    a_new[i] = a_old[i] + (c[i] - a_old[i]) * alpha + eps;
  }
  a_new[3] = std::max(a_new[3], 0.0);  // the body cannot sink below its ground point

  // Integrate planar motion with the pre-step yaw, then rotate.
  const double yaw0 = state.pose.yaw;
  const double cy = std::cos(yaw0), sy = std::sin(yaw0);
  const double dx = (a_new[0] * cy - a_new[1] * sy) * dt;
  const double dy = (a_new[0] * sy + a_new[1] * cy) * dt;
  const double yaw1 = wrap_angle(yaw0 + a_new[2] * dt);

  const double x0 = state.pose.x, y0 = state.pose.y;
  const double h0 = state.achieved.h, roll0 = state.pose.roll;
  const double h1 = a_new[3], roll1 = a_new[4];

  // Candidate configurations in rollback order: full step, x reverted,
  // x and y reverted, posture also reverted.
  struct Candidate {
    double x, y, h, roll;
  };
  const Candidate candidates[4] = {
      {x0 + dx, y0 + dy, h1, roll1},
      {x0, y0 + dy, h1, roll1},
      {x0, y0, h1, roll1},
      {x0, y0, h0, roll0},
  };

  const double margin = 1e-6;
  const double xmin = world.origin_x() + margin;
  const double xmax = world.origin_x() + world.width() - margin;
  const double ymin = world.origin_y() + margin;
  const double ymax = world.origin_y() + world.depth() - margin;

  AgentState out = state;
  bool resolved = false;
  bool clamped_any = false;
  int chosen = 0;
  for (int k = 0; k < 4; ++k) {
    Candidate cand = candidates[k];
    const double cx = std::clamp(cand.x, xmin, xmax);
    const double cyy = std::clamp(cand.y, ymin, ymax);
    const bool clamped = (cx != cand.x) || (cyy != cand.y);
    if (!check_collision(world, cx, cyy, yaw1, cand.h, cand.roll, geom_)) {
      out.pose.x = cx;
      out.pose.y = cyy;
      out.achieved = Command{a_new[0], a_new[1], a_new[2], cand.h, cand.roll};
      out.pose.roll = cand.roll;
      clamped_any = clamped;
      chosen = k;
      resolved = true;
      break;
    }
  }
  if (!resolved) {
    // Rotation-only contact: restore the previous tick's configuration.
    out.pose.x = x0;
    out.pose.y = y0;
    out.achieved = Command{a_new[0], a_new[1], a_new[2], h0, roll0};
    out.pose.roll = roll0;
    out.pose.yaw = yaw0;
    out.pose.z = state.pose.z;
    out.colliding = true;
    out.vz = 0.0;
    out.omega_xy = {0.0, 0.0};
    return out;
  }

  out.pose.yaw = yaw1;
  const double z1 = world.ground_at(out.pose.x, out.pose.y) + out.achieved.h;
  out.vz = (z1 - state.pose.z) / dt;
  out.omega_xy = {(out.pose.roll - roll0) / dt, 0.0};
  out.pose.z = z1;
  out.colliding = (chosen != 0) || clamped_any;
  out.cumulative_path_length += std::hypot(out.pose.x - x0, out.pose.y - y0);
  return out;
}

}  // namespace voxnav::sim
