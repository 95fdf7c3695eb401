#include "voxnav/harness/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "voxnav/core/errors.hpp"
#include "voxnav/core/rng.hpp"
#include "voxnav/policy/classical.hpp"
#include "voxnav/policy/oracle.hpp"

namespace voxnav::harness {

namespace {

std::uint64_t episode_seed(std::uint64_t sweep_seed, std::size_t task_index) {
  return Rng(Seed{sweep_seed}, "eval").derive(static_cast<std::uint64_t>(task_index)).next_u64();
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd over_seeds(const std::vector<double>& values) {
  MeanStd ms;
  if (values.empty()) return ms;
  for (double v : values) ms.mean += v;
  ms.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - ms.mean) * (v - ms.mean);
  ms.std = std::sqrt(var / static_cast<double>(values.size()));
  return ms;
}

BandReport band_report(const std::string& label, const std::vector<std::uint64_t>& seeds,
                       const std::vector<std::vector<EpisodeResult>>& per_seed_results) {
  BandReport report;
  report.band = label;
  report.tasks = per_seed_results.empty() ? 0 : static_cast<int>(per_seed_results.front().size());
  std::vector<double> srs, spls;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const double sr = compute_sr(per_seed_results[s]);
    const double spl = compute_spl(per_seed_results[s]);
    report.per_seed.push_back({seeds[s], sr, spl});
    srs.push_back(sr);
    spls.push_back(spl);
  }
  const MeanStd sr = over_seeds(srs), spl = over_seeds(spls);
  report.sr_mean = sr.mean;
  report.sr_std = sr.std;
  report.spl_mean = spl.mean;
  report.spl_std = spl.std;
  return report;
}

nlohmann::ordered_json band_json(const BandReport& b) {
  nlohmann::ordered_json j;
  j["band"] = b.band;
  j["tasks"] = b.tasks;
  j["sr"] = {{"mean", b.sr_mean}, {"std", b.sr_std}};
  j["spl"] = {{"mean", b.spl_mean}, {"std", b.spl_std}};
  auto& per_seed = j["per_seed"] = nlohmann::ordered_json::array();
  for (const SeedStats& s : b.per_seed) {
    per_seed.push_back({{"seed", s.seed}, {"sr", s.sr}, {"spl", s.spl}});
  }
  return j;
}

}  // namespace

PolicyEntry make_policy_entry(std::string_view name, const policy::ReactiveParams* reactive_params) {
  const std::string n(name);
  if (n == "oracle") {
    return {n, [] { return std::make_unique<policy::OraclePolicy>(); }};
  }
  if (n == "oracle-rigid") {
    return {n, [] {
              policy::OracleOptions options;
              options.posture_enabled = false;
              return std::make_unique<policy::OraclePolicy>(options);
            }};
  }
  if (n == "bug") {
    return {n, [] { return std::make_unique<policy::Bug2Policy>(); }};
  }
  if (n == "wallfollow") {
    return {n, [] { return std::make_unique<policy::WallFollowPolicy>(); }};
  }
  if (n == "wallfollow-right") {
    return {n, [] { return std::make_unique<policy::WallFollowPolicy>(policy::FollowSide::kRight); }};
  }
  if (n == "reactive") {
    const policy::ReactiveParams params =
        reactive_params != nullptr ? *reactive_params : policy::ReactiveParams{};
    return {n, [params] { return std::make_unique<policy::ReactivePolicy>(params); }};
  }
  throw ConfigError("unknown policy: " + n);
}

MetricsReport evaluate(const VoxelWorld& world, const TaskSuite& suite,
                       const EvalRequest& request) {
  if (request.policies.empty()) throw ConfigError("evaluation needs at least one policy");
  if (request.seeds.empty()) throw ConfigError("evaluation needs at least one seed");
  if (suite.tasks.empty()) throw ConfigError("evaluation needs a non-empty task suite");

  // One privileged route per task, shared read-only by all episodes.
  std::vector<curriculum::GlobalPath> paths;
  paths.reserve(suite.tasks.size());
  for (const Task& task : suite.tasks) {
    paths.push_back(curriculum::plan_global_path(world, task.start.x, task.start.y, task.goal.x,
                                                 task.goal.y, request.planner));
  }

  const std::size_t n_policies = request.policies.size();
  const std::size_t n_seeds = request.seeds.size();
  const std::size_t n_tasks = suite.tasks.size();
  const std::size_t n_jobs = n_policies * n_seeds * n_tasks;
  std::vector<EpisodeResult> results(n_jobs);

  auto run_job = [&](std::size_t job) {
    const std::size_t p = job / (n_seeds * n_tasks);
    const std::size_t s = (job / n_tasks) % n_seeds;
    const std::size_t i = job % n_tasks;
    const std::unique_ptr<policy::Policy> pol = request.policies[p].make();
    EpisodeSetup setup;
    setup.path = &paths[i];
    results[job] = run_episode(world, suite.tasks[i], *pol, request.episode,
                               Seed{episode_seed(request.seeds[s], i)}, setup);
  };

  const int workers = std::max(1, request.workers);
  if (workers == 1 || n_jobs <= 1) {
    for (std::size_t job = 0; job < n_jobs; ++job) run_job(job);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t job = next.fetch_add(1); job < n_jobs; job = next.fetch_add(1)) {
        try {
          run_job(job);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    const int n_threads = static_cast<int>(std::min<std::size_t>(workers, n_jobs));
    pool.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Band labels in first-appearance order.
  std::vector<std::string> labels;
  for (const Task& task : suite.tasks) {
    if (std::find(labels.begin(), labels.end(), task.band) == labels.end()) {
      labels.push_back(task.band);
    }
  }

  MetricsReport report;
  report.world_tag = suite.world_tag;
  report.seeds = request.seeds;
  for (std::size_t p = 0; p < n_policies; ++p) {
    PolicyReport pr;
    pr.name = request.policies[p].name;
    auto result_at = [&](std::size_t s, std::size_t i) -> const EpisodeResult& {
      return results[(p * n_seeds + s) * n_tasks + i];
    };
    for (const std::string& label : labels) {
      std::vector<std::vector<EpisodeResult>> per_seed(n_seeds);
      for (std::size_t s = 0; s < n_seeds; ++s) {
        for (std::size_t i = 0; i < n_tasks; ++i) {
          if (suite.tasks[i].band == label) per_seed[s].push_back(result_at(s, i));
        }
      }
      pr.bands.push_back(band_report(label, request.seeds, per_seed));
    }
    {
      std::vector<std::vector<EpisodeResult>> per_seed(n_seeds);
      for (std::size_t s = 0; s < n_seeds; ++s) {
        for (std::size_t i = 0; i < n_tasks; ++i) per_seed[s].push_back(result_at(s, i));
      }
      pr.overall = band_report("all", request.seeds, per_seed);
    }
    {
      std::vector<int> counts;
      for (std::size_t s = 0; s < n_seeds; ++s) {
        for (std::size_t i = 0; i < n_tasks; ++i) counts.push_back(result_at(s, i).collision_ticks);
      }
      std::sort(counts.begin(), counts.end());
      CollisionSummary& cs = pr.collisions;
      cs.episodes = static_cast<int>(counts.size());
      double total = 0.0;
      int zeros = 0;
      for (int c : counts) {
        total += c;
        zeros += c == 0 ? 1 : 0;
      }
      cs.mean = total / static_cast<double>(counts.size());
      cs.zero_fraction = static_cast<double>(zeros) / static_cast<double>(counts.size());
      auto quantile = [&](double q) {
        const std::size_t idx =
            static_cast<std::size_t>(std::floor(q * static_cast<double>(counts.size() - 1)));
        return counts[idx];
      };
      cs.p50 = quantile(0.5);
      cs.p90 = quantile(0.9);
      cs.max = counts.back();
    }
    report.policies.push_back(std::move(pr));
  }
  return report;
}

std::string metrics_to_json(const MetricsReport& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = "voxnav-metrics-v1";
  doc["world"] = report.world_tag;
  doc["seeds"] = report.seeds;
  auto& policies = doc["policies"] = nlohmann::ordered_json::array();
  for (const PolicyReport& pr : report.policies) {
    nlohmann::ordered_json p;
    p["name"] = pr.name;
    auto& bands = p["bands"] = nlohmann::ordered_json::array();
    for (const BandReport& b : pr.bands) bands.push_back(band_json(b));
    p["overall"] = band_json(pr.overall);
    p["collisions"] = {{"episodes", pr.collisions.episodes},
                       {"zero_fraction", pr.collisions.zero_fraction},
                       {"mean", pr.collisions.mean},
                       {"p50", pr.collisions.p50},
                       {"p90", pr.collisions.p90},
                       {"max", pr.collisions.max}};
    policies.push_back(std::move(p));
  }
  return doc.dump(2) + "\n";
}

void save_metrics(const std::filesystem::path& path, const MetricsReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << metrics_to_json(report);
}

}  // namespace voxnav::harness
