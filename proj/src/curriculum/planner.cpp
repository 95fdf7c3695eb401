#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "voxnav/core/errors.hpp"
#include "voxnav/curriculum/planner.hpp"

namespace voxnav::curriculum {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

/// Multi-source Dijkstra from every seed cell; fills dist (meters) and the
/// seed component that got there first.
void brushfire(int nx, int ny, double res, const std::vector<std::uint8_t>& blocked,
               const std::vector<std::int32_t>& comp_of_blocked, std::vector<float>& dist,
               std::vector<std::int32_t>& nearest) {
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  dist.assign(n, std::numeric_limits<float>::infinity());
  nearest.assign(n, -1);
  using Item = std::tuple<double, std::int32_t, std::int32_t>;  // dist, cell, comp
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  auto idx = [ny](int ix, int iy) { return static_cast<std::size_t>(ix) * ny + iy; };
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      const std::size_t i = idx(ix, iy);
      if (blocked[i]) {
        heap.emplace(0.0, static_cast<std::int32_t>(i), comp_of_blocked[i]);
      } else if (ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1) {
        // Phantom blocked cell just outside the lattice: center-to-center res.
        heap.emplace(res, static_cast<std::int32_t>(i), 0);
      }
    }
  }
  while (!heap.empty()) {
    auto [d, cell, comp] = heap.top();
    heap.pop();
    if (d >= dist[cell]) continue;
    dist[cell] = static_cast<float>(d);
    nearest[cell] = comp;
    const int ix = cell / ny, iy = cell % ny;
    for (int k = 0; k < 8; ++k) {
      const int jx = ix + kDx[k], jy = iy + kDy[k];
      if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
      const std::size_t j = idx(jx, jy);
      if (blocked[j]) continue;
      const double nd = d + (k < 4 ? res : res * kSqrt2);
      if (nd < dist[j]) heap.emplace(nd, static_cast<std::int32_t>(j), comp);
    }
  }
}

/// 4-connected components of the blocked mask; any component touching the
/// outer ring merges with the border component 0.
std::vector<std::int32_t> label_components(int nx, int ny,
                                           const std::vector<std::uint8_t>& blocked,
                                           std::int32_t& count) {
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  std::vector<std::int32_t> comp(n, -1);
  auto idx = [ny](int ix, int iy) { return static_cast<std::size_t>(ix) * ny + iy; };
  std::int32_t next = 1;
  std::vector<std::int32_t> stack;
  std::vector<std::uint8_t> touches_border;
  touches_border.push_back(1);  // component 0 is the border itself
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      const std::size_t i = idx(ix, iy);
      if (!blocked[i] || comp[i] >= 0) continue;
      const std::int32_t id = next++;
      touches_border.push_back(0);
      stack.assign(1, static_cast<std::int32_t>(i));
      comp[i] = id;
      while (!stack.empty()) {
        const std::int32_t c = stack.back();
        stack.pop_back();
        const int cx = c / ny, cyy = c % ny;
        if (cx == 0 || cyy == 0 || cx == nx - 1 || cyy == ny - 1) touches_border[id] = 1;
        for (int k = 0; k < 4; ++k) {
          const int jx = cx + kDx[k], jy = cyy + kDy[k];
          if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
          const std::size_t j = idx(jx, jy);
          if (blocked[j] && comp[j] < 0) {
            comp[j] = id;
            stack.push_back(static_cast<std::int32_t>(j));
          }
        }
      }
    }
  }
  // Relabel border-touching components to 0 and compact the rest.
  std::vector<std::int32_t> remap(next, 0);
  std::int32_t kept = 1;
  for (std::int32_t id = 1; id < next; ++id) remap[id] = touches_border[id] ? 0 : kept++;
  for (auto& c : comp)
    if (c >= 0) c = remap[c];
  count = kept;  // distinct generator ids, border included
  return comp;
}

struct SearchResult {
  GridCost cost;
  std::vector<std::int32_t> cells;  // path, start first
};

/// 8-connected shortest path; diagonal steps may not cut blocked corners.
/// `heuristic` toggles A* (octile) vs plain Dijkstra; `restrict_to` optionally
/// limits expansion to a marked subset; `targets` marks goal cells.
SearchResult grid_search(const TraversabilityMap& map, bool allow_posture, std::int32_t start,
                         const std::vector<std::uint8_t>& targets, bool heuristic,
                         const std::vector<std::uint8_t>* restrict_to, int goal_ix, int goal_iy) {
  const int nx = map.nx, ny = map.ny;
  const double res = map.res;
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  const auto& pass = allow_posture ? map.passable_any : map.passable_nominal;

  auto usable = [&](std::size_t i) {
    return pass[i] != 0 && (restrict_to == nullptr || (*restrict_to)[i] != 0);
  };
  auto octile = [&](int ix, int iy) {
    if (!heuristic) return 0.0;
    const double ax = std::abs(ix - goal_ix), ay = std::abs(iy - goal_iy);
    return res * (std::max(ax, ay) + (kSqrt2 - 1.0) * std::min(ax, ay));
  };

  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<std::int32_t> parent(n, -1);
  std::vector<GridCost> steps(n);
  using Item = std::tuple<double, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  g[start] = 0.0;
  heap.emplace(octile(start / ny, start % ny), start);
  std::int32_t found = -1;
  std::vector<std::uint8_t> settled(n, 0);
  while (!heap.empty()) {
    auto [f, cell] = heap.top();
    heap.pop();
    if (settled[cell]) continue;
    settled[cell] = 1;
    if (targets[cell]) {
      found = cell;
      break;
    }
    const int ix = cell / ny, iy = cell % ny;
    for (int k = 0; k < 8; ++k) {
      const int jx = ix + kDx[k], jy = iy + kDy[k];
      if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
      const std::size_t j = map.idx(jx, jy);
      if (!usable(j) || settled[j]) continue;
      if (k >= 4) {  // no corner cutting past a blocked cardinal neighbor
        const std::size_t a = map.idx(ix, jy), b = map.idx(jx, iy);
        if (!usable(a) || !usable(b)) continue;
      }
      const double nd = g[cell] + (k < 4 ? res : res * kSqrt2);
      if (nd < g[j]) {
        g[j] = nd;
        parent[j] = cell;
        steps[j] = steps[cell];
        if (k < 4) {
          ++steps[j].cardinal;
        } else {
          ++steps[j].diagonal;
        }
        heap.emplace(nd + octile(jx, jy), static_cast<std::int32_t>(j));
      }
    }
  }
  if (found < 0) throw PlanningError("no route through the traversable grid");
  SearchResult out;
  out.cost = steps[found];
  for (std::int32_t c = found; c >= 0; c = parent[c]) out.cells.push_back(c);
  std::reverse(out.cells.begin(), out.cells.end());
  return out;
}

std::int32_t cell_of(const TraversabilityMap& map, double x, double y, bool allow_posture,
                     const char* what) {
  const int ix = static_cast<int>(std::floor((x - map.ox) / map.res));
  const int iy = static_cast<int>(std::floor((y - map.oy) / map.res));
  if (!map.passable(ix, iy, allow_posture)) {
    throw PlanningError(std::string(what) + " column is not traversable");
  }
  return static_cast<std::int32_t>(map.idx(ix, iy));
}

}  // namespace

double GridCost::meters(double res) const {
  return cardinal * res + diagonal * (res * kSqrt2);
}

TraversabilityMap build_traversability(const VoxelWorld& world, const PlannerConfig& config) {
  TraversabilityMap map;
  map.nx = world.nx();
  map.ny = world.ny();
  map.res = world.resolution();
  map.ox = world.origin_x();
  map.oy = world.origin_y();
  const std::size_t n = static_cast<std::size_t>(map.nx) * map.ny;
  map.free_height.resize(n);
  map.blocked.resize(n);
  std::vector<std::uint8_t> blocked_nominal(n);
  for (int ix = 0; ix < map.nx; ++ix) {
    for (int iy = 0; iy < map.ny; ++iy) {
      const std::size_t i = map.idx(ix, iy);
      const double ground = world.ground_elevation(ix, iy);
      const double ceiling = world.first_occupied_above(ix, iy, ground + 1e-9);
      const double fh = std::isinf(ceiling) ? 10.0 : ceiling - ground;
      map.free_height[i] = static_cast<float>(fh);
      map.blocked[i] = fh < config.clearance_any ? 1 : 0;
      blocked_nominal[i] = fh < config.clearance_nominal ? 1 : 0;
    }
  }

  std::int32_t comp_count = 0;
  const auto comp = label_components(map.nx, map.ny, map.blocked, comp_count);
  brushfire(map.nx, map.ny, map.res, map.blocked, comp, map.obstacle_dist, map.nearest);
  std::vector<float> dist_nominal;
  std::vector<std::int32_t> nearest_nominal;
  std::int32_t nom_count = 0;
  const auto comp_nominal = label_components(map.nx, map.ny, blocked_nominal, nom_count);
  brushfire(map.nx, map.ny, map.res, blocked_nominal, comp_nominal, dist_nominal,
            nearest_nominal);

  map.passable_any.resize(n);
  map.passable_nominal.resize(n);
  map.gvd.assign(n, 0);
  // obstacle_dist is center-to-center; the obstacle surface sits res/2 nearer.
  const double surface = map.res / 2;
  for (std::size_t i = 0; i < n; ++i) {
    map.passable_any[i] =
        (!map.blocked[i] && map.obstacle_dist[i] - surface > config.inflate_any) ? 1 : 0;
    map.passable_nominal[i] =
        (!blocked_nominal[i] && dist_nominal[i] - surface > config.inflate_nominal) ? 1 : 0;
  }
  if (comp_count >= 2) {
    for (int ix = 0; ix < map.nx; ++ix) {
      for (int iy = 0; iy < map.ny; ++iy) {
        const std::size_t i = map.idx(ix, iy);
        if (!map.passable_any[i]) continue;
        for (int k = 0; k < 8 && !map.gvd[i]; ++k) {
          const int jx = ix + kDx[k], jy = iy + kDy[k];
          if (jx < 0 || jx >= map.nx || jy < 0 || jy >= map.ny) continue;
          const std::size_t j = map.idx(jx, jy);
          if (!map.blocked[j] && map.nearest[j] != map.nearest[i]) map.gvd[i] = 1;
        }
        map.has_gvd = map.has_gvd || map.gvd[i] != 0;
      }
    }
  }
  return map;
}

GridCost shortest_grid_cost(const TraversabilityMap& map, double sx, double sy, double gx,
                            double gy, bool allow_posture) {
  const auto start = cell_of(map, sx, sy, allow_posture, "start");
  const auto goal = cell_of(map, gx, gy, allow_posture, "goal");
  std::vector<std::uint8_t> targets(static_cast<std::size_t>(map.nx) * map.ny, 0);
  targets[goal] = 1;
  return grid_search(map, allow_posture, start, targets, true, nullptr, goal / map.ny,
                     goal % map.ny)
      .cost;
}

GridCost dijkstra_grid_cost(const TraversabilityMap& map, double sx, double sy, double gx,
                            double gy, bool allow_posture) {
  const auto start = cell_of(map, sx, sy, allow_posture, "start");
  const auto goal = cell_of(map, gx, gy, allow_posture, "goal");
  std::vector<std::uint8_t> targets(static_cast<std::size_t>(map.nx) * map.ny, 0);
  targets[goal] = 1;
  return grid_search(map, allow_posture, start, targets, false, nullptr, 0, 0).cost;
}

double shortest_path_length(const TraversabilityMap& map, double sx, double sy, double gx,
                            double gy, const PlannerConfig& config) {
  const int six = static_cast<int>(std::floor((sx - map.ox) / map.res));
  const int siy = static_cast<int>(std::floor((sy - map.oy) / map.res));
  const int gix = static_cast<int>(std::floor((gx - map.ox) / map.res));
  const int giy = static_cast<int>(std::floor((gy - map.oy) / map.res));
  const double scx = map.ox + (six + 0.5) * map.res, scy = map.oy + (siy + 0.5) * map.res;
  const double gcx = map.ox + (gix + 0.5) * map.res, gcy = map.oy + (giy + 0.5) * map.res;
  if (six == gix && siy == giy) return std::hypot(gx - sx, gy - sy);
  const auto cost = shortest_grid_cost(map, sx, sy, gx, gy, config.allow_posture);
  return cost.meters(map.res) + std::hypot(scx - sx, scy - sy) + std::hypot(gx - gcx, gy - gcy);
}

double shortest_path_length(const VoxelWorld& world, double sx, double sy, double gx, double gy,
                            const PlannerConfig& config) {
  return shortest_path_length(build_traversability(world, config), sx, sy, gx, gy, config);
}

std::array<double, 2> GlobalPath::point_at(double s) const {
  if (points.empty()) return {0.0, 0.0};
  if (s <= 0.0 || points.size() == 1) return points.front();
  if (s >= arclength.back()) return points.back();
  const auto it = std::upper_bound(arclength.begin(), arclength.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - arclength.begin());
  const double s0 = arclength[i - 1], s1 = arclength[i];
  const double t = s1 > s0 ? (s - s0) / (s1 - s0) : 0.0;
  return {points[i - 1][0] + t * (points[i][0] - points[i - 1][0]),
          points[i - 1][1] + t * (points[i][1] - points[i - 1][1])};
}

const PathAnnotation& GlobalPath::annotation_at(double s) const {
  static const PathAnnotation kDefault{};
  if (notes.empty()) return kDefault;
  const auto it = std::lower_bound(arclength.begin(), arclength.end(), s);
  std::size_t i = static_cast<std::size_t>(it - arclength.begin());
  if (i >= notes.size()) i = notes.size() - 1;
  if (i > 0 && s - arclength[i - 1] < arclength[i] - s) --i;
  return notes[i];
}

double GlobalPath::min_clearance(double s0, double s1) const {
  double best = 10.0;
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (arclength[i] >= s0 - 1e-9 && arclength[i] <= s1 + 1e-9) {
      best = std::min(best, notes[i].clearance);
    }
  }
  return best;
}

double GlobalPath::min_gap(double s0, double s1) const {
  double best = 10.0;
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (arclength[i] >= s0 - 1e-9 && arclength[i] <= s1 + 1e-9) {
      best = std::min(best, notes[i].gap);
    }
  }
  return best;
}

namespace {

PathAnnotation annotate_cell(const TraversabilityMap& map, int ix, int iy,
                             const PlannerConfig& config) {
  PathAnnotation note;
  double clearance = 10.0;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      const int jx = ix + dx, jy = iy + dy;
      if (jx < 0 || jx >= map.nx || jy < 0 || jy >= map.ny) continue;
      const std::size_t j = map.idx(jx, jy);
      if (map.blocked[j]) continue;  // walls beside the path are not overhead
      clearance = std::min(clearance, static_cast<double>(map.free_height[j]));
    }
  }
  note.clearance = clearance;
  // Surface-to-surface lateral free width at this cell.
  note.gap = 2.0 * (map.obstacle_dist[map.idx(ix, iy)] - map.res / 2);
  if (note.gap < config.roll_below) {
    note.posture = PostureClass::kRoll;
  } else if (note.clearance < config.crouch_below) {
    note.posture = PostureClass::kCrouch;
  }
  return note;
}

void append_point(GlobalPath& path, const TraversabilityMap& map, double x, double y,
                  const PlannerConfig& config) {
  if (!path.points.empty()) {
    const auto& last = path.points.back();
    const double d = std::hypot(x - last[0], y - last[1]);
    if (d < 1e-12) return;
    path.arclength.push_back(path.arclength.back() + d);
  } else {
    path.arclength.push_back(0.0);
  }
  path.points.push_back({x, y});
  const int ix = static_cast<int>(std::floor((x - map.ox) / map.res));
  const int iy = static_cast<int>(std::floor((y - map.oy) / map.res));
  path.notes.push_back(
      annotate_cell(map, std::clamp(ix, 0, map.nx - 1), std::clamp(iy, 0, map.ny - 1), config));
}

}  // namespace

GlobalPath plan_global_path(const TraversabilityMap& map, double sx, double sy, double gx,
                            double gy, const PlannerConfig& config) {
  const auto start = cell_of(map, sx, sy, config.allow_posture, "start");
  const auto goal = cell_of(map, gx, gy, config.allow_posture, "goal");

  GlobalPath path;
  if (start == goal) {
    append_point(path, map, sx, sy, config);
    append_point(path, map, gx, gy, config);
    if (path.points.empty()) append_point(path, map, sx, sy, config);
    return path;
  }

  std::vector<std::int32_t> route;
  bool planned = false;
  if (config.prefer_gvd && map.has_gvd) {
    try {
      auto entry = grid_search(map, config.allow_posture, start, map.gvd, false, nullptr, 0, 0);
      auto exit = grid_search(map, config.allow_posture, goal, map.gvd, false, nullptr, 0, 0);
      std::vector<std::uint8_t> target(map.gvd.size(), 0);
      target[exit.cells.back()] = 1;
      auto mid = grid_search(map, config.allow_posture, entry.cells.back(), target, true,
                             &map.gvd, exit.cells.back() / map.ny, exit.cells.back() % map.ny);
      route = entry.cells;
      route.insert(route.end(), mid.cells.begin() + 1, mid.cells.end());
      route.insert(route.end(), exit.cells.rbegin() + 1, exit.cells.rend());
      planned = true;
    } catch (const PlanningError&) {
      planned = false;  // fragmented skeleton: use the direct grid route
    }
  }
  if (!planned) {
    std::vector<std::uint8_t> targets(map.gvd.size(), 0);
    targets[goal] = 1;
    route = grid_search(map, config.allow_posture, start, targets, true, nullptr, goal / map.ny,
                        goal % map.ny)
                .cells;
  }

  append_point(path, map, sx, sy, config);
  for (const auto c : route) {
    append_point(path, map, map.ox + (c / map.ny + 0.5) * map.res,
                 map.oy + (c % map.ny + 0.5) * map.res, config);
  }
  append_point(path, map, gx, gy, config);
  return path;
}

GlobalPath plan_global_path(const VoxelWorld& world, double sx, double sy, double gx, double gy,
                            const PlannerConfig& config) {
  return plan_global_path(build_traversability(world, config), sx, sy, gx, gy, config);
}

}  // namespace voxnav::curriculum
