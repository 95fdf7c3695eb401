#pragma once

#include <functional>
#include <span>
#include <vector>

#include "voxnav/core/types.hpp"
#include "voxnav/policy/reactive.hpp"

namespace voxnav::policy {

/// Cross-entropy search settings. init_mean/init_std fix the search
/// dimension; both must be the same nonzero length.
struct CEMConfig {
  int population = 16;
  double elite_fraction = 0.25;  // in (0, 1)
  int iterations = 30;
  int episodes_per_candidate = 1;  // forwarded to the evaluator's accounting
  std::vector<double> init_mean;
  std::vector<double> init_std;
  double std_floor = 0.02;  // refit stds never shrink below this
};

struct CEMResult {
  std::vector<double> best;         // highest-scoring parameters ever drawn
  double best_score = 0.0;
  std::vector<double> final_mean;   // distribution mean after the last refit
  std::vector<double> mean_return;  // per-iteration population average
  std::vector<double> best_return;  // per-iteration population maximum
};

/// Scores one candidate; iteration/candidate indices let the evaluator derive
/// its own deterministic episode seeds.
using CEMEvaluator =
    std::function<double(std::span<const double> params, int iteration, int candidate)>;

inline int cem_elite_count(const CEMConfig& config) {
  int n = static_cast<int>(std::round(config.population * config.elite_fraction));
  return n < 1 ? 1 : n;
}

/// Maximizes the evaluator by iterated Gaussian refit on the elite set.
/// Deterministic given (config, seed, evaluator): candidate k of iteration i
/// draws from an RNG stream keyed by exactly those indices. From the second
/// iteration on, candidate 0 re-evaluates the best-ever parameters verbatim,
/// so with a deterministic evaluator the per-iteration maximum never
/// decreases. Throws ConfigError on invalid settings.
CEMResult cem_optimize(const CEMEvaluator& evaluate, const CEMConfig& config, Seed seed);

struct TrainResult {
  ReactiveParams params;  // best clamped parameters found
  CEMResult history;
};

/// Convenience wrapper for tuning the potential-field controller: seeds the
/// search at its defaults (when config.init_mean is empty) and maps every
/// candidate through ReactiveParams::from_vector before scoring.
TrainResult cem_train(
    const std::function<double(const ReactiveParams&, int iteration, int candidate)>& evaluate,
    CEMConfig config, Seed seed);

}  // namespace voxnav::policy
