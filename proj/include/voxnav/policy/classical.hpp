#pragma once

#include <array>
#include <vector>

#include "voxnav/core/rng.hpp"
#include "voxnav/policy/policy.hpp"

namespace voxnav::policy {

/// Which hand the boundary-following controllers keep against the wall.
enum class FollowSide { kLeft, kRight };

/// Tick-to-tick memory of the shared boundary-tracing control.
struct FollowMemory {
  double prev_side = -1.0;  // last side distance, for servo damping (< 0: unset)
  int since_side = 1000;    // ticks since the boundary was last held on the side
};

/// Goal-seeking with boundary following on blockage. Drives straight at the
/// goal until the elevation window shows an obstruction in the frontal
/// sector, then traces the obstacle boundary until it re-crosses the original
/// start-goal line strictly closer to the goal than where it left it, and
/// resumes goal seeking. Dead-reckons its own pose by integrating the
/// achieved yaw rate against the body-frame goal vector; never changes
/// posture. The boundary side is drawn once per episode from the seed.
class Bug2Policy : public Policy {
 public:
  explicit Bug2Policy(double cruise = 0.8) : cruise_(cruise) {}

  void reset(Seed seed) override;
  Command act(const sim::ObservationBundle& obs) override;
  std::string_view name() const override { return "bug"; }

  /// Goal distances recorded each time boundary following engaged. The
  /// re-join rule makes consecutive entries strictly decreasing.
  const std::vector<double>& hit_distances() const { return hits_; }
  bool following() const { return mode_ == Mode::kFollow; }

 private:
  enum class Mode { kSeek, kFollow };

  double cruise_ = 0.8;
  Mode mode_ = Mode::kSeek;
  FollowSide side_ = FollowSide::kLeft;
  bool anchored_ = false;
  double psi_ = 0.0;                        // dead-reckoned yaw since episode start
  std::array<double, 2> goal_start_{};      // goal seen from the start pose frame
  std::array<double, 2> line_dir_{};        // unit start->goal direction, start frame
  double line_len_ = 0.0;
  double hit_dist_ = 0.0;                   // goal distance where following engaged
  double prev_offset_ = 0.0;                // signed distance from the start-goal line
  double prev_goal_dist_ = 0.0;
  bool left_line_ = false;                  // has this follow segment left the line yet
  FollowMemory mem_;
  std::vector<double> hits_;
};

/// Pure boundary tracer: acquires the nearest obstruction (spiraling outward
/// when nothing is in the elevation window), then holds a fixed standoff from
/// it indefinitely. Knows nothing about the goal; the driving loop decides
/// arrival. Never changes posture.
class WallFollowPolicy : public Policy {
 public:
  explicit WallFollowPolicy(FollowSide side = FollowSide::kLeft, double cruise = 0.8)
      : side_(side), cruise_(cruise) {}

  void reset(Seed seed) override;
  Command act(const sim::ObservationBundle& obs) override;
  std::string_view name() const override { return "wallfollow"; }

 private:
  FollowSide side_ = FollowSide::kLeft;
  double cruise_ = 0.8;
  int tick_ = 0;
  FollowMemory mem_;
};

}  // namespace voxnav::policy
