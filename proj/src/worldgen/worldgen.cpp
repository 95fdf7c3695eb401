#include "voxnav/worldgen/worldgen.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

#include "voxnav/core/errors.hpp"
#include "voxnav/curriculum/planner.hpp"
#include "voxnav/sim/body.hpp"

namespace voxnav::worldgen {

using curriculum::PlannerConfig;
using curriculum::plan_global_path;
using sim::BodyGeometry;
using sim::check_collision;

const char* preset_name(WorldPreset preset) {
  switch (preset) {
    case WorldPreset::kCorridor: return "corridor";
    case WorldPreset::kRoom: return "room";
    case WorldPreset::kComplex1: return "complex1";
    case WorldPreset::kComplex2: return "complex2";
    case WorldPreset::kRandom: return "random";
  }
  return "random";
}

WorldPreset preset_from_name(std::string_view name) {
  if (name == "corridor") return WorldPreset::kCorridor;
  if (name == "room") return WorldPreset::kRoom;
  if (name == "complex1") return WorldPreset::kComplex1;
  if (name == "complex2") return WorldPreset::kComplex2;
  if (name == "random") return WorldPreset::kRandom;
  throw ConfigError("unknown world preset '" + std::string(name) + "'");
}

namespace {

constexpr double kRes = 0.1;

/// Occupies whole voxels covering [z0, z1] in one column.
void occupy_z_range(VoxelWorld& w, int ix, int iy, double z0, double z1) {
  int iz0 = std::max(0, static_cast<int>(std::floor((z0 - w.origin_z()) / kRes + 1e-6)));
  int iz1 = std::min(w.nz() - 1,
                     static_cast<int>(std::ceil((z1 - w.origin_z()) / kRes - 1e-6)) - 1);
  for (int iz = iz0; iz <= iz1; ++iz) w.set_occupied(ix, iy, iz, true);
}

/// Free height above local ground, used by the placement connectivity sweep.
double free_band(const VoxelWorld& w, int ix, int iy) {
  double g = w.ground_elevation(ix, iy);
  double above = w.first_occupied_above(ix, iy, g + 1e-9);
  return above - g;  // +inf when the column is open
}

/// 4-connected reachability between the spawn cells through columns whose
/// free band admits at least the lowest crouch.
bool spawns_connected(const VoxelWorld& w, const SpawnPoints& spawn) {
  constexpr double kBand = 0.17;
  int sx = w.index_x(spawn.sx), sy = w.index_y(spawn.sy);
  int gx = w.index_x(spawn.gx), gy = w.index_y(spawn.gy);
  if (!w.in_bounds_xy(sx, sy) || !w.in_bounds_xy(gx, gy)) return false;
  if (free_band(w, sx, sy) <= kBand || free_band(w, gx, gy) <= kBand) return false;

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w.nx()) * w.ny(), 0);
  auto idx = [&](int ix, int iy) { return static_cast<std::size_t>(ix) * w.ny() + iy; };
  std::queue<std::pair<int, int>> queue;
  queue.push({sx, sy});
  seen[idx(sx, sy)] = 1;
  constexpr int kDx[4] = {1, -1, 0, 0};
  constexpr int kDy[4] = {0, 0, 1, -1};
  while (!queue.empty()) {
    auto [ix, iy] = queue.front();
    queue.pop();
    if (ix == gx && iy == gy) return true;
    for (int d = 0; d < 4; ++d) {
      int nx = ix + kDx[d];
      int ny = iy + kDy[d];
      if (!w.in_bounds_xy(nx, ny) || seen[idx(nx, ny)]) continue;
      if (free_band(w, nx, ny) <= kBand) continue;
      seen[idx(nx, ny)] = 1;
      queue.push({nx, ny});
    }
  }
  return false;
}

struct Rect {
  double x0, y0, x1, y1;
};

bool rect_near_point(const Rect& r, double margin, double px, double py) {
  return px >= r.x0 - margin && px <= r.x1 + margin && py >= r.y0 - margin && py <= r.y1 + margin;
}

bool rect_clear_of_spawns(const Rect& r, const SpawnPoints& spawn) {
  constexpr double kMargin = 0.6;
  return !rect_near_point(r, kMargin, spawn.sx, spawn.sy) &&
         !rect_near_point(r, kMargin, spawn.gx, spawn.gy);
}

/// Wall standing on local ground over the rect footprint.
void add_wall(VoxelWorld& w, const Rect& r, double height) {
  int ix0 = std::max(0, w.index_x(r.x0 + 1e-9));
  int ix1 = std::min(w.nx() - 1, w.index_x(r.x1 - 1e-9));
  int iy0 = std::max(0, w.index_y(r.y0 + 1e-9));
  int iy1 = std::min(w.ny() - 1, w.index_y(r.y1 - 1e-9));
  for (int ix = ix0; ix <= ix1; ++ix) {
    for (int iy = iy0; iy <= iy1; ++iy) {
      double g = w.ground_elevation(ix, iy);
      occupy_z_range(w, ix, iy, g, g + height);
    }
  }
}

/// Overhanging slab whose base sits `clearance` above local ground, rounded
/// up to the voxel grid so the free band never shrinks below `clearance`.
void add_slab(VoxelWorld& w, const Rect& r, double clearance, double thickness) {
  double base = std::ceil(clearance / kRes - 1e-9) * kRes;
  int ix0 = std::max(0, w.index_x(r.x0 + 1e-9));
  int ix1 = std::min(w.nx() - 1, w.index_x(r.x1 - 1e-9));
  int iy0 = std::max(0, w.index_y(r.y0 + 1e-9));
  int iy1 = std::min(w.ny() - 1, w.index_y(r.y1 - 1e-9));
  for (int ix = ix0; ix <= ix1; ++ix) {
    for (int iy = iy0; iy <= iy1; ++iy) {
      double g = w.ground_elevation(ix, iy);
      occupy_z_range(w, ix, iy, g + base, g + base + thickness);
    }
  }
}

enum class ObstacleKind { kWall, kTable, kBox };

/// One rejection-sampled placement; throws after 200 consecutive rejections.
void place_one(VoxelWorld& world, ObstacleKind kind, const SpawnPoints& spawn, Rng& rng,
               const Rect& region) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    double cx = rng.uniform(region.x0, region.x1);
    double cy = rng.uniform(region.y0, region.y1);
    Rect r{};
    double clearance = 0.0, height = 0.0;
    switch (kind) {
      case ObstacleKind::kWall: {
        bool along_x = rng.uniform_int(2) == 0;
        double len = rng.uniform(1.5, 4.0);
        height = rng.uniform(1.2, 2.0);
        double hx = along_x ? len / 2 : 0.1;
        double hy = along_x ? 0.1 : len / 2;
        r = {cx - hx, cy - hy, cx + hx, cy + hy};
        break;
      }
      case ObstacleKind::kTable: {
        double hx = rng.uniform(0.8, 1.6) / 2;
        double hy = rng.uniform(0.6, 1.2) / 2;
        clearance = rng.uniform(0.18, 0.40);
        height = 0.15;
        r = {cx - hx, cy - hy, cx + hx, cy + hy};
        break;
      }
      case ObstacleKind::kBox: {
        double hx = rng.uniform(0.4, 0.9) / 2;
        double hy = rng.uniform(0.4, 0.9) / 2;
        clearance = rng.uniform(0.18, 0.40);
        height = rng.uniform(0.3, 0.8);
        r = {cx - hx, cy - hy, cx + hx, cy + hy};
        break;
      }
    }
    r.x0 = std::max(r.x0, 0.2);
    r.y0 = std::max(r.y0, 0.2);
    r.x1 = std::min(r.x1, world.width() - 0.2);
    r.y1 = std::min(r.y1, world.depth() - 0.2);
    if (r.x1 <= r.x0 || r.y1 <= r.y0) continue;
    if (!rect_clear_of_spawns(r, spawn)) continue;

    VoxelWorld candidate = world;
    if (kind == ObstacleKind::kWall) {
      add_wall(candidate, r, height);
    } else {
      add_slab(candidate, r, clearance, height);
    }
    if (!spawns_connected(candidate, spawn)) continue;
    world = std::move(candidate);
    return;
  }
  throw GenerationError("obstacle placement rejected 200 consecutive candidates");
}

}  // namespace

VoxelWorld rasterize(const Tileset& tileset, const TileGrid& grid, double world_height) {
  const int cols = tileset.columns();
  const int nx = grid.gw * cols;
  const int ny = grid.gh * cols;
  const int nz = static_cast<int>(world_height / kRes + 0.5);
  VoxelWorld w(nx, ny, nz, kRes, 0.0, 0.0, -kRes);

  std::vector<const Tile*> by_id;
  for (const Tile& t : tileset.tiles) {
    if (t.id >= static_cast<int>(by_id.size())) by_id.resize(t.id + 1, nullptr);
    by_id[t.id] = &t;
  }

  for (int ty = 0; ty < grid.gh; ++ty) {
    for (int tx = 0; tx < grid.gw; ++tx) {
      const Tile& tile = *by_id[grid.at(tx, ty)];
      for (int cy = 0; cy < cols; ++cy) {
        for (int cx = 0; cx < cols; ++cx) {
          int ix = tx * cols + cx;
          int iy = ty * cols + cy;
          std::size_t c = static_cast<std::size_t>(cy) * cols + cx;
          double g = std::floor(tile.elevation[c] / kRes + 1e-6) * kRes;
          w.set_ground_elevation(ix, iy, static_cast<float>(g));
          occupy_z_range(w, ix, iy, w.origin_z(), g);  // sub-floor + terrain
          if (tile.blocked_height[c] > 0.0f) {
            occupy_z_range(w, ix, iy, g, g + tile.blocked_height[c]);
          }
        }
      }
    }
  }
  return w;
}

VoxelWorld make_ground_world(double extent_x, double extent_y, double world_height) {
  int nx = static_cast<int>(extent_x / kRes + 0.5);
  int ny = static_cast<int>(extent_y / kRes + 0.5);
  int nz = static_cast<int>(world_height / kRes + 0.5);
  VoxelWorld w(nx, ny, nz, kRes, 0.0, 0.0, -kRes);
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) w.set_occupied(ix, iy, 0, true);
  }
  return w;
}

int place_obstacles(VoxelWorld& world, const ObstacleCounts& counts, const SpawnPoints& spawn,
                    Rng& rng) {
  Rect region{1.0, 1.0, world.width() - 1.0, world.depth() - 1.0};
  int placed = 0;
  for (int i = 0; i < counts.walls; ++i, ++placed)
    place_one(world, ObstacleKind::kWall, spawn, rng, region);
  for (int i = 0; i < counts.tables; ++i, ++placed)
    place_one(world, ObstacleKind::kTable, spawn, rng, region);
  for (int i = 0; i < counts.boxes; ++i, ++placed)
    place_one(world, ObstacleKind::kBox, spawn, rng, region);
  return placed;
}

namespace {

/// Removes everything above local ground within a disc (spawn areas stay open).
void clear_disc(VoxelWorld& w, double cx, double cy, double radius) {
  int ix0 = std::max(0, w.index_x(cx - radius));
  int ix1 = std::min(w.nx() - 1, w.index_x(cx + radius));
  int iy0 = std::max(0, w.index_y(cy - radius));
  int iy1 = std::min(w.ny() - 1, w.index_y(cy + radius));
  for (int ix = ix0; ix <= ix1; ++ix) {
    for (int iy = iy0; iy <= iy1; ++iy) {
      double dx = w.center_x(ix) - cx;
      double dy = w.center_y(iy) - cy;
      if (dx * dx + dy * dy > radius * radius) continue;
      double g = w.ground_elevation(ix, iy);
      int gz = w.index_z(g - kRes / 2);  // highest terrain voxel
      for (int iz = gz + 1; iz < w.nz(); ++iz) w.set_occupied(ix, iy, iz, false);
    }
  }
}

GeneratedWorld build_corridor(Seed seed, int attempt) {
  Rng walls = Rng(seed, "worldgen").derive(static_cast<std::uint64_t>(attempt)).derive("walls");
  double ja = walls.uniform(-0.5, 0.5);
  double jb = walls.uniform(-0.5, 0.5);
  double jd = walls.uniform(-0.5, 0.5);
  double je = walls.uniform(-0.5, 0.5);

  GeneratedWorld g;
  g.world = make_ground_world(20.0, 20.0);
  g.preset = WorldPreset::kCorridor;
  g.seed = seed;
  g.spawn = {2.5, 2.5, 17.5, 17.5};

  constexpr double kH = 1.5;
  // Perimeter.
  add_wall(g.world, {0.0, 0.0, 0.2, 20.0}, kH);
  add_wall(g.world, {19.8, 0.0, 20.0, 20.0}, kH);
  add_wall(g.world, {0.2, 0.0, 19.8, 0.2}, kH);
  add_wall(g.world, {0.2, 19.8, 19.8, 20.0}, kH);
  // Two long baffles force an S-shaped route; the straight start-goal
  // segment crosses the lower one.
  add_wall(g.world, {0.2, 6.5, 14.0 + ja, 6.7}, kH);
  add_wall(g.world, {6.0 + jb, 13.2, 19.8, 13.4}, kH);
  // Stub into the middle band.
  add_wall(g.world, {9.9 + jd, 6.7, 10.1 + jd, 10.5}, kH);
  // Dead-end pocket along the south-east perimeter.
  add_wall(g.world, {16.9 + je, 0.2, 17.1 + je, 4.0}, kH);
  g.obstacle_count = 8;
  return g;
}

GeneratedWorld build_room(Seed seed, int attempt) {
  Rng root = Rng(seed, "worldgen").derive(static_cast<std::uint64_t>(attempt));

  GeneratedWorld g;
  g.world = make_ground_world(20.0, 20.0);
  g.preset = WorldPreset::kRoom;
  g.seed = seed;
  g.spawn = {6.0, 10.0, 16.0, 10.0};

  constexpr double kH = 1.5;
  // Chamber around the map center; the only walkable exit is a 1.2 m door
  // at the west end of the north wall, far from the goal side.
  add_wall(g.world, {4.0, 6.0, 12.0, 6.2}, kH);                    // south
  add_wall(g.world, {4.0, 6.2, 4.2, 13.8}, kH);                    // west
  add_wall(g.world, {4.0, 13.8, 4.4, 14.0}, kH);                   // north, west of door
  add_wall(g.world, {5.6, 13.8, 12.0, 14.0}, kH);                  // north, east of door
  add_wall(g.world, {11.8, 6.2, 12.0, 8.5}, kH);                   // east, south part
  add_wall(g.world, {11.8, 11.5, 12.0, 13.8}, kH);                 // east, north part
  add_slab(g.world, {11.8, 8.5, 12.0, 11.5}, 0.30, kH - 0.30);     // crouch-height crossing
  g.obstacle_count = 7;

  // Slab obstacles scattered on the goal side.
  Rng tables = root.derive("tables");
  for (int i = 0; i < 3; ++i) {
    place_one(g.world, ObstacleKind::kTable, g.spawn, tables, {13.0, 6.5, 18.5, 13.5});
    ++g.obstacle_count;
  }
  return g;
}

GeneratedWorld build_complex(WorldPreset preset, Seed seed, int attempt) {
  Rng root = Rng(seed, "worldgen").derive(static_cast<std::uint64_t>(attempt));
  Rng seeder = root.derive("terrain");
  Seed terrain_seed{seeder.next_u64()};

  Tileset ts = default_tileset();
  TileGrid grid = wfc_collapse(ts, 10, 10, terrain_seed);

  GeneratedWorld g;
  g.world = rasterize(ts, grid);
  g.preset = preset;
  g.seed = seed;
  g.spawn = {2.5, 2.5, 17.5, 17.5};
  clear_disc(g.world, g.spawn.sx, g.spawn.sy, 1.2);
  clear_disc(g.world, g.spawn.gx, g.spawn.gy, 1.2);

  ObstacleCounts counts;
  if (preset == WorldPreset::kComplex1) {
    counts = {4, 6, 4};
  } else {
    Rng draws = root.derive("counts");
    counts.walls = 6 + static_cast<int>(draws.uniform_int(5));
    counts.tables = 8 + static_cast<int>(draws.uniform_int(5));
    counts.boxes = 6 + static_cast<int>(draws.uniform_int(5));
  }
  Rng scatter = root.derive("obstacles");
  g.obstacle_count = place_obstacles(g.world, counts, g.spawn, scatter);
  return g;
}

/// Route feasibility via the global planner; throws PlanningError when the
/// world is not usable, so callers can retry with the next sub-seed.
void verify_world(const GeneratedWorld& g, bool require_nominal) {
  const BodyGeometry body;
  if (check_collision(g.world, g.spawn.sx, g.spawn.sy, 0.0, body.nominal_h, 0.0, body) ||
      check_collision(g.world, g.spawn.gx, g.spawn.gy, 0.0, body.nominal_h, 0.0, body)) {
    throw PlanningError("spawn pose collides");
  }
  PlannerConfig any;
  plan_global_path(g.world, g.spawn.sx, g.spawn.sy, g.spawn.gx, g.spawn.gy, any);
  if (require_nominal) {
    PlannerConfig nominal;
    nominal.allow_posture = false;
    plan_global_path(g.world, g.spawn.sx, g.spawn.sy, g.spawn.gx, g.spawn.gy, nominal);
  }
}

}  // namespace

GeneratedWorld preset_world(WorldPreset preset, Seed seed) {
  if (preset == WorldPreset::kRandom) {
    WorldSpec spec;
    spec.seed = seed;
    spec.density = {3, 4, 3};
    return generate_world(spec);
  }
  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    try {
      GeneratedWorld g;
      bool require_nominal = false;
      switch (preset) {
        case WorldPreset::kCorridor:
          g = build_corridor(seed, attempt);
          require_nominal = true;
          break;
        case WorldPreset::kRoom:
          g = build_room(seed, attempt);
          require_nominal = true;
          break;
        default:
          g = build_complex(preset, seed, attempt);
          break;
      }
      verify_world(g, require_nominal);
      return g;
    } catch (const GenerationError&) {
      if (attempt == kAttempts - 1) throw;
    } catch (const PlanningError&) {
      // Fall through to the next sub-seed.
    }
  }
  throw GenerationError(std::string("preset '") + preset_name(preset) +
                        "' produced no route-feasible world in 16 attempts");
}

GeneratedWorld generate_world(const WorldSpec& spec) {
  if (spec.preset != WorldPreset::kRandom) return preset_world(spec.preset, spec.seed);

  double gx_f = spec.extent_x / spec.tile_edge;
  double gy_f = spec.extent_y / spec.tile_edge;
  int gw = static_cast<int>(gx_f + 0.5);
  int gh = static_cast<int>(gy_f + 0.5);
  if (gw < 1 || gh < 1 || std::abs(gx_f - gw) > 1e-9 || std::abs(gy_f - gh) > 1e-9) {
    throw ConfigError("world extent must be a positive multiple of the tile edge");
  }

  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    try {
      Rng root = Rng(spec.seed, "worldgen").derive(static_cast<std::uint64_t>(attempt));
      Rng seeder = root.derive("terrain");
      Seed terrain_seed{seeder.next_u64()};

      Tileset ts = default_tileset();
      TileGrid grid = wfc_collapse(ts, gw, gh, terrain_seed);

      GeneratedWorld g;
      g.world = rasterize(ts, grid);
      g.preset = WorldPreset::kRandom;
      g.seed = spec.seed;
      double inset = std::min(2.5, std::min(spec.extent_x, spec.extent_y) / 4.0);
      g.spawn = {inset, inset, spec.extent_x - inset, spec.extent_y - inset};
      clear_disc(g.world, g.spawn.sx, g.spawn.sy, 1.2);
      clear_disc(g.world, g.spawn.gx, g.spawn.gy, 1.2);
      Rng scatter = root.derive("obstacles");
      g.obstacle_count = place_obstacles(g.world, spec.density, g.spawn, scatter);
      verify_world(g, false);
      return g;
    } catch (const GenerationError&) {
      if (attempt == kAttempts - 1) throw;
    } catch (const PlanningError&) {
    }
  }
  throw GenerationError("random world produced no route-feasible layout in 16 attempts");
}

}  // namespace voxnav::worldgen
