#pragma once

#include <array>
#include <span>

#include "voxnav/policy/policy.hpp"

namespace voxnav::policy {

/// The six scalars the search optimizes. from_vector() clamps each into its
/// valid range, so an unconstrained optimizer can propose anything.
struct ReactiveParams {
  double attract_gain = 1.0;    // pull toward the goal, >= 0
  double repulse_gain = 0.6;    // push away from obstructions, >= 0
  double falloff = 0.5;         // repulsion e-folding distance (m)
  double crouch_trigger = 0.38; // crouch when forward ceiling drops below (m)
  double roll_trigger = 0.32;   // roll when forward lateral gap drops below (m)
  double cruise = 0.8;          // speed scale (m/s)

  static constexpr int kDim = 6;

  static ReactiveParams from_vector(std::span<const double> v);
  std::array<double, kDim> to_vector() const;
};

/// Memoryless potential-field controller: goal attraction plus exponential
/// repulsion from elevation-window obstructions steers the planar command;
/// the 3-D window ahead of the body triggers crouching under low ceilings and
/// rolling into narrow gaps. All behavior lives in six tunable scalars.
class ReactivePolicy : public Policy {
 public:
  explicit ReactivePolicy(ReactiveParams params = {}) : params_(params) {}

  void reset(Seed seed) override;
  Command act(const sim::ObservationBundle& obs) override;
  std::string_view name() const override { return "reactive"; }

  const ReactiveParams& params() const { return params_; }
  void set_params(ReactiveParams params) { params_ = params; }

 private:
  ReactiveParams params_;
};

}  // namespace voxnav::policy
