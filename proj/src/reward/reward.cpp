#include "voxnav/reward/reward.hpp"

namespace voxnav::reward {
namespace {

double squared_norm(const std::array<double, 5>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

std::array<double, 5> sub(const std::array<double, 5>& a, const std::array<double, 5>& b) {
  std::array<double, 5> out;
  for (int i = 0; i < 5; ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

std::array<double, 7> regularizers(const RewardInputs& in, const RewardWeights& w,
                                   const RewardOptions& opt) {
  const auto c = in.cmd.channels();
  const auto c1 = in.cmd_prev.channels();
  const auto c2 = in.cmd_prev2.channels();
  const auto a = in.achieved.channels();

  const double rate = squared_norm(sub(c, c1));
  std::array<double, 5> second;
  for (int i = 0; i < 5; ++i) second[i] = c[i] - 2.0 * c1[i] + c2[i];
  const double smooth = squared_norm(second);
  const double tracking = std::sqrt(squared_norm(sub(c, a)));
  const double body_vel =
      in.vz * in.vz + in.omega_xy[0] * in.omega_xy[0] + in.omega_xy[1] * in.omega_xy[1];
  const double dh = in.achieved.h - opt.nominal_h;
  const double posture = opt.posture_term ? dh * dh + in.achieved.roll * in.achieved.roll : 0.0;
  const double out_of_range = command_in_range(in.cmd) ? 0.0 : 1.0;
  const double collision = in.colliding ? 1.0 : 0.0;

  return {w.w4 * rate,     w.w5 * smooth,  w.w6 * tracking, w.w7 * body_vel,
          w.w8 * posture,  w.w9 * out_of_range, w.w10 * collision};
}

RewardBreakdown total(const RewardInputs& in, VisitCounter& counter, double x, double y,
                      const RewardWeights& w, const RewardOptions& opt) {
  RewardBreakdown out;
  out.r[0] = goal_arrival(in.dist_to_subgoal, w.w1, opt.arrival_radius);
  out.r[1] = state_count(counter, x, y, w.w2);
  const double speed = std::hypot(in.achieved.vx, in.achieved.vy);
  out.r[2] = desired_speed(in.v_des, speed, w.w3, opt.speed_scale);
  const auto reg = regularizers(in, w, opt);
  for (int i = 0; i < 7; ++i) out.r[3 + i] = reg[i];
  double sum = 0.0;
  for (double r : out.r) sum += r;
  out.total = sum;
  return out;
}

}  // namespace voxnav::reward
