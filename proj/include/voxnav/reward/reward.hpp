#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "voxnav/core/types.hpp"

namespace voxnav::reward {

/// Weights of the ten high-level reward terms.
struct RewardWeights {
  double w1 = 5.0;    // goal arrival
  double w2 = 0.5;    // state count
  double w3 = 0.25;   // desired speed
  double w4 = -0.1;   // command rate
  double w5 = -0.1;   // smooth command
  double w6 = -0.2;   // tracking error
  double w7 = -0.1;   // body velocity
  double w8 = -0.04;  // nominal posture
  double w9 = -2.5;   // command limit
  double w10 = -2.5;  // collision
};

/// Extra knobs for terms whose inputs are not weights.
struct RewardOptions {
  double nominal_h = 0.30;
  // The posture term penalizes (h, roll) deviation in place of a joint-space
  // norm; turn off to drop the term entirely.
  bool posture_term = true;
  double arrival_radius = 0.1;  // m, strict inequality
  double speed_scale = 0.3;     // m/s, exponential width of the speed term
};

enum class VisitReset : std::uint8_t { kPerTask };

/// Sparse per-cell visitation counter over the planar workspace.
class VisitCounter {
 public:
  explicit VisitCounter(double cell_size = 0.5) : cell_size_(cell_size) {}

  double cell_size() const { return cell_size_; }
  VisitReset reset_policy() const { return reset_policy_; }

  /// Count of the cell containing (x, y) without touching it.
  int count_at(double x, double y) const {
    auto it = counts_.find(key(x, y));
    return it == counts_.end() ? 0 : it->second;
  }

  /// Increments the cell containing (x, y) and returns the new count.
  int visit(double x, double y) { return ++counts_[key(x, y)]; }

  void reset() { counts_.clear(); }
  std::size_t cells_visited() const { return counts_.size(); }

 private:
  static std::int64_t pack(std::int32_t cx, std::int32_t cy) {
    return (static_cast<std::int64_t>(cx) << 32) ^ static_cast<std::uint32_t>(cy);
  }
  std::int64_t key(double x, double y) const {
    return pack(static_cast<std::int32_t>(std::floor(x / cell_size_)),
                static_cast<std::int32_t>(std::floor(y / cell_size_)));
  }

  double cell_size_;
  VisitReset reset_policy_ = VisitReset::kPerTask;
  std::unordered_map<std::int64_t, int> counts_;
};

/// Per-term values of one reward evaluation; total is the ordered sum r1..r10.
struct RewardBreakdown {
  std::array<double, 10> r{};
  double total = 0.0;

  double operator[](int i) const { return r[i]; }
};

/// w1 if the agent is strictly within the arrival radius of the sub-goal.
inline double goal_arrival(double dist_to_subgoal, double w1, double radius = 0.1) {
  return dist_to_subgoal < radius ? w1 : 0.0;
}

/// Intrinsic exploration bonus w2 / sqrt(count); increments the visited cell.
inline double state_count(VisitCounter& counter, double x, double y, double w2) {
  return w2 / std::sqrt(static_cast<double>(counter.visit(x, y)));
}

/// w3 * exp(-|v_des - speed| / 0.3)
inline double desired_speed(double v_des, double planar_speed, double w3,
                            double speed_scale = 0.3) {
  return w3 * std::exp(-std::abs(v_des - planar_speed) / speed_scale);
}

/// One simulator tick's worth of reward inputs.
struct RewardInputs {
  double dist_to_subgoal = 0.0;  // planar distance to the currently observed goal
  Command cmd;                   // c_t
  Command cmd_prev;              // c_{t-1}
  Command cmd_prev2;             // c_{t-2}
  Command achieved;              // realized channel values after the tick
  double vz = 0.0;
  std::array<double, 2> omega_xy = {0.0, 0.0};
  double v_des = 0.0;
  bool colliding = false;
};

/// The seven regularization terms r4..r10 (each <= 0 under default weights).
std::array<double, 7> regularizers(const RewardInputs& in, const RewardWeights& w,
                                   const RewardOptions& opt = {});

/// Full ten-term evaluation for one tick; also advances the visit counter.
RewardBreakdown total(const RewardInputs& in, VisitCounter& counter, double x, double y,
                      const RewardWeights& w, const RewardOptions& opt = {});

}  // namespace voxnav::reward
