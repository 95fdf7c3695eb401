#include "voxnav/harness/tasks.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "voxnav/core/errors.hpp"
#include "voxnav/core/rng.hpp"

namespace voxnav::harness {

namespace {

constexpr int kMaxSamplesPerBand = 10000;
constexpr double kBorderMargin = 0.5;  // m kept clear of the world edge

int map_index(double v, double origin, double res) {
  return static_cast<int>(std::floor((v - origin) / res));
}

}  // namespace

std::vector<BandSpec> standard_bands(int near, int mid, int far) {
  std::vector<BandSpec> bands;
  if (near > 0) bands.push_back({"b5_10", 5.0, 10.0, near});
  if (mid > 0) bands.push_back({"b10_20", 10.0, 20.0, mid});
  if (far > 0) bands.push_back({"b20_30", 20.0, 30.0, far});
  return bands;
}

TaskSuite generate_tasks(const VoxelWorld& world, std::span<const BandSpec> bands, Seed seed,
                         std::string world_tag, const curriculum::PlannerConfig& planner,
                         const sim::BodyGeometry& geometry) {
  const curriculum::TraversabilityMap map = curriculum::build_traversability(world, planner);
  const double x_lo = world.origin_x() + kBorderMargin;
  const double x_hi = world.origin_x() + world.width() - kBorderMargin;
  const double y_lo = world.origin_y() + kBorderMargin;
  const double y_hi = world.origin_y() + world.depth() - kBorderMargin;
  if (!(x_lo < x_hi) || !(y_lo < y_hi)) {
    throw GenerationError("task generation: world too small to sample inside its borders");
  }

  const Rng base(seed, "tasks");
  TaskSuite suite;
  suite.world_tag = std::move(world_tag);
  for (const BandSpec& band : bands) {
    if (band.count <= 0) continue;
    Rng rng = base.derive(band.label);
    int produced = 0;
    for (int attempt = 0; attempt < kMaxSamplesPerBand && produced < band.count; ++attempt) {
      // A fixed five draws per attempt keeps the stream position independent
      // of which check rejected the sample.
      const double sx = rng.uniform(x_lo, x_hi);
      const double sy = rng.uniform(y_lo, y_hi);
      const double yaw = rng.uniform(-std::numbers::pi, std::numbers::pi);
      const double gx = rng.uniform(x_lo, x_hi);
      const double gy = rng.uniform(y_lo, y_hi);

      const double dist = std::hypot(gx - sx, gy - sy);
      if (dist < band.lo || dist > band.hi) continue;
      if (!map.passable(map_index(sx, map.ox, map.res), map_index(sy, map.oy, map.res),
                        planner.allow_posture) ||
          !map.passable(map_index(gx, map.ox, map.res), map_index(gy, map.oy, map.res),
                        planner.allow_posture)) {
        continue;
      }
      if (sim::check_collision(world, sx, sy, yaw, geometry.nominal_h, 0.0, geometry)) continue;

      double length = 0.0;
      try {
        length = curriculum::shortest_path_length(map, sx, sy, gx, gy, planner);
      } catch (const PlanningError&) {
        continue;
      }

      Task task;
      task.start = Pose{sx, sy, world.ground_at(sx, sy) + geometry.nominal_h, yaw, 0.0};
      task.goal = curriculum::SubGoalPoint{gx, gy, world.ground_at(gx, gy)};
      task.band = band.label;
      task.shortest_length = length;
      suite.tasks.push_back(std::move(task));
      ++produced;
    }
    if (produced < band.count) {
      std::ostringstream msg;
      msg << "task generation: band " << band.label << " quota " << band.count
          << " unreachable in " << kMaxSamplesPerBand << " samples (got " << produced << ")";
      throw GenerationError(msg.str());
    }
  }
  return suite;
}

std::string suite_to_json(const TaskSuite& suite) {
  nlohmann::ordered_json doc;
  doc["schema"] = "voxnav-tasks-v1";
  doc["world"] = suite.world_tag;
  auto& tasks = doc["tasks"] = nlohmann::ordered_json::array();
  for (const Task& task : suite.tasks) {
    nlohmann::ordered_json t;
    t["band"] = task.band;
    t["start"] = {{"x", task.start.x},
                  {"y", task.start.y},
                  {"z", task.start.z},
                  {"yaw", task.start.yaw}};
    t["goal"] = {{"x", task.goal.x}, {"y", task.goal.y}, {"z", task.goal.z}};
    t["shortest_length"] = task.shortest_length;
    tasks.push_back(std::move(t));
  }
  return doc.dump(2) + "\n";
}

TaskSuite suite_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("task suite: malformed JSON");
  try {
    if (doc.at("schema").get<std::string>() != "voxnav-tasks-v1") {
      throw ConfigError("task suite: unsupported schema");
    }
    TaskSuite suite;
    suite.world_tag = doc.value("world", std::string{});
    for (const auto& t : doc.at("tasks")) {
      Task task;
      task.band = t.at("band").get<std::string>();
      const auto& s = t.at("start");
      task.start.x = s.at("x").get<double>();
      task.start.y = s.at("y").get<double>();
      task.start.z = s.at("z").get<double>();
      task.start.yaw = s.at("yaw").get<double>();
      const auto& g = t.at("goal");
      task.goal.x = g.at("x").get<double>();
      task.goal.y = g.at("y").get<double>();
      task.goal.z = g.at("z").get<double>();
      task.shortest_length = t.at("shortest_length").get<double>();
      suite.tasks.push_back(std::move(task));
    }
    return suite;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("task suite: ") + e.what());
  }
}

void save_suite(const std::filesystem::path& path, const TaskSuite& suite) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << suite_to_json(suite);
}

TaskSuite load_suite(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return suite_from_json(buf.str());
}

}  // namespace voxnav::harness
