#pragma once

#include <span>
#include <vector>

#include "voxnav/core/voxel_world.hpp"
#include "voxnav/curriculum/planner.hpp"

namespace voxnav::curriculum {

struct SubGoalPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

struct CurriculumConfig {
  double base_spacing = 1.0;    // m between sub-goals at level 1
  double spacing_step = 1.0;    // m added per level
  double arrival_radius = 0.1;  // m, strictly-less arrival test
  int promotions_needed = 3;    // consecutive final-level successes to graduate
  double gamma = 0.99;          // per-tick discount within a segment
  double segment_timeout_s = 60.0;
};

/// Sub-goals every `spacing` meters of arclength along the route, final goal
/// appended last (its z from the ground under the route end). Intermediate
/// goals sit strictly inside the route, so a spacing beyond the total length
/// leaves only the final goal.
std::vector<SubGoalPoint> sample_subgoals(const GlobalPath& path, double spacing,
                                          const VoxelWorld& world);

/// Level ladder over one task's route: level k spaces sub-goals
/// base + (k-1)*step apart; the final level K is the smallest whose spacing
/// exceeds the route length (a single sub-goal: the goal itself). Promotion
/// is one level per fully completed sequence; there is no demotion.
class Curriculum {
 public:
  Curriculum(const GlobalPath* path, const VoxelWorld* world, CurriculumConfig config = {});

  int level() const { return level_; }
  int final_level() const { return final_level_; }
  double spacing() const;
  const std::vector<SubGoalPoint>& goals() const { return goals_; }
  int next_index() const { return next_index_; }
  bool sequence_complete() const { return next_index_ >= static_cast<int>(goals_.size()); }
  int consecutive_final_successes() const { return final_successes_; }
  const CurriculumConfig& config() const { return config_; }

  /// Starts an episode: the sub-goal pointer rewinds to the first goal.
  void reset_episode() { next_index_ = 0; }

  /// Returns the sub-goal the agent should currently observe, advancing the
  /// pointer whenever the planar position comes within the arrival radius.
  /// After the last arrival it keeps returning the final goal.
  SubGoalPoint observe(double x, double y);

  enum class Outcome { kStay, kAdvance, kGraduate };

  /// Between-episode bookkeeping. A fully completed sequence advances one
  /// level, or counts toward graduation at the final level; failures only
  /// reset the graduation streak.
  Outcome advance_level(bool full_sequence_success);

 private:
  void resample();

  const GlobalPath* path_;
  const VoxelWorld* world_;
  CurriculumConfig config_;
  int level_ = 1;
  int final_level_ = 1;
  int next_index_ = 0;
  int final_successes_ = 0;
  std::vector<SubGoalPoint> goals_;
};

/// Per-segment bookkeeping: the discounted return earned between consecutive
/// sub-goal arrivals.
struct SegmentReturn {
  int level = 1;
  int index = 0;  // which sub-goal the segment ran toward
  double value = 0.0;
  int ticks = 0;  // segment length including the arrival tick
  bool reached = false;
};

/// Sum of gamma^t * rewards[t] over the stream.
double discounted_return(std::span<const double> rewards, double gamma);

}  // namespace voxnav::curriculum
