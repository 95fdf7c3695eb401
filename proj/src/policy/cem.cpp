#include "voxnav/policy/cem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "voxnav/core/errors.hpp"
#include "voxnav/core/rng.hpp"

namespace voxnav::policy {
namespace {

void validate(const CEMConfig& c) {
  if (c.population < 2) throw ConfigError("search population must be at least 2");
  if (!(c.elite_fraction > 0.0 && c.elite_fraction < 1.0)) {
    throw ConfigError("elite fraction must lie strictly between 0 and 1");
  }
  if (c.iterations < 1) throw ConfigError("iteration count must be positive");
  if (c.episodes_per_candidate < 1) {
    throw ConfigError("episodes per candidate must be positive");
  }
  if (c.init_mean.empty()) throw ConfigError("initial mean must be non-empty");
  if (c.init_mean.size() != c.init_std.size()) {
    throw ConfigError("initial mean and std lengths differ");
  }
  for (double s : c.init_std) {
    if (!(s >= 0.0)) throw ConfigError("initial stds must be non-negative");
  }
  if (!(c.std_floor >= 0.0)) throw ConfigError("std floor must be non-negative");
}

}  // namespace

CEMResult cem_optimize(const CEMEvaluator& evaluate, const CEMConfig& config, Seed seed) {
  validate(config);
  const int n = static_cast<int>(config.init_mean.size());
  const int pop = config.population;
  const int n_elite = std::min(cem_elite_count(config), pop);

  std::vector<double> mean = config.init_mean;
  std::vector<double> stdv = config.init_std;
  const Rng base(seed, "cem");

  CEMResult result;
  result.best = mean;
  result.best_score = -std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> cands(pop, std::vector<double>(n));
  std::vector<double> scores(pop);
  std::vector<int> order(pop);

  for (int it = 0; it < config.iterations; ++it) {
    for (int cand = 0; cand < pop; ++cand) {
      if (it > 0 && cand == 0) {
        // Re-evaluate the incumbent verbatim: with a deterministic evaluator
        // the per-iteration maximum can then never fall.
        cands[cand] = result.best;
      } else {
        Rng rng = base.derive(static_cast<std::uint64_t>(it))
                      .derive(static_cast<std::uint64_t>(cand));
        for (int k = 0; k < n; ++k) cands[cand][k] = mean[k] + stdv[k] * rng.normal();
      }
      scores[cand] = evaluate(cands[cand], it, cand);
      if (scores[cand] > result.best_score) {
        result.best_score = scores[cand];
        result.best = cands[cand];
      }
    }

    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });

    for (int k = 0; k < n; ++k) {
      double m = 0.0;
      for (int e = 0; e < n_elite; ++e) m += cands[order[e]][k];
      m /= n_elite;
      double var = 0.0;
      for (int e = 0; e < n_elite; ++e) {
        const double d = cands[order[e]][k] - m;
        var += d * d;
      }
      mean[k] = m;
      stdv[k] = std::max(std::sqrt(var / n_elite), config.std_floor);
    }

    result.mean_return.push_back(std::accumulate(scores.begin(), scores.end(), 0.0) / pop);
    result.best_return.push_back(*std::max_element(scores.begin(), scores.end()));
  }

  result.final_mean = mean;
  return result;
}

TrainResult cem_train(
    const std::function<double(const ReactiveParams&, int iteration, int candidate)>& evaluate,
    CEMConfig config, Seed seed) {
  if (config.init_mean.empty()) {
    const auto defaults = ReactiveParams{}.to_vector();
    config.init_mean.assign(defaults.begin(), defaults.end());
    config.init_std = {0.5, 0.5, 0.3, 0.1, 0.1, 0.3};
  }
  if (config.init_mean.size() != ReactiveParams::kDim) {
    throw ConfigError("controller search needs exactly 6 initial means");
  }
  const auto wrapped = [&](std::span<const double> v, int it, int cand) {
    return evaluate(ReactiveParams::from_vector(v), it, cand);
  };
  TrainResult out;
  out.history = cem_optimize(wrapped, config, seed);
  out.params = ReactiveParams::from_vector(out.history.best);
  return out;
}

}  // namespace voxnav::policy
