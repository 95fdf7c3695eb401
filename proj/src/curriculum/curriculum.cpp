#include <cmath>

#include "voxnav/curriculum/curriculum.hpp"

namespace voxnav::curriculum {

std::vector<SubGoalPoint> sample_subgoals(const GlobalPath& path, double spacing,
                                          const VoxelWorld& world) {
  std::vector<SubGoalPoint> goals;
  const double total = path.length();
  for (double s = spacing; s < total - 1e-9; s += spacing) {
    const auto p = path.point_at(s);
    goals.push_back({p[0], p[1], world.ground_at(p[0], p[1])});
  }
  const auto end = path.points.empty() ? std::array<double, 2>{0, 0} : path.points.back();
  goals.push_back({end[0], end[1], world.ground_at(end[0], end[1])});
  return goals;
}

Curriculum::Curriculum(const GlobalPath* path, const VoxelWorld* world, CurriculumConfig config)
    : path_(path), world_(world), config_(config) {
  // Final level: smallest spacing that overshoots the whole route.
  int k = 1;
  while (config_.base_spacing + (k - 1) * config_.spacing_step <= path_->length() + 1e-9) ++k;
  final_level_ = k;
  resample();
}

double Curriculum::spacing() const {
  return config_.base_spacing + (level_ - 1) * config_.spacing_step;
}

void Curriculum::resample() {
  goals_ = sample_subgoals(*path_, spacing(), *world_);
  next_index_ = 0;
}

SubGoalPoint Curriculum::observe(double x, double y) {
  if (sequence_complete()) return goals_.back();
  const auto& g = goals_[next_index_];
  if (std::hypot(g.x - x, g.y - y) < config_.arrival_radius) {
    ++next_index_;
    if (sequence_complete()) return goals_.back();
    return goals_[next_index_];
  }
  return g;
}

Curriculum::Outcome Curriculum::advance_level(bool full_sequence_success) {
  if (!full_sequence_success) {
    final_successes_ = 0;
    return Outcome::kStay;
  }
  if (level_ < final_level_) {
    ++level_;
    resample();
    return Outcome::kAdvance;
  }
  ++final_successes_;
  if (final_successes_ >= config_.promotions_needed) return Outcome::kGraduate;
  return Outcome::kStay;
}

double discounted_return(std::span<const double> rewards, double gamma) {
  double value = 0.0;
  for (std::size_t i = rewards.size(); i-- > 0;) value = rewards[i] + gamma * value;
  return value;
}

}  // namespace voxnav::curriculum
