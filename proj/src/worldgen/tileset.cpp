#include "voxnav/worldgen/tileset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "voxnav/core/errors.hpp"

namespace voxnav::worldgen {

std::vector<AdjacencyRule> rules_from_edges(const std::vector<Tile>& tiles) {
  std::vector<AdjacencyRule> rules;
  for (const Tile& a : tiles) {
    for (int side = 0; side < 4; ++side) {
      for (const Tile& b : tiles) {
        if (a.edge[side] == b.edge[opposite_side(side)]) {
          rules.push_back({a.id, side, b.id});
        }
      }
    }
  }
  return rules;
}

void Tileset::validate() const {
  const int cols = columns();
  const std::size_t cells = static_cast<std::size_t>(cols) * cols;
  std::set<int> ids;
  for (const Tile& t : tiles) {
    if (!ids.insert(t.id).second) {
      throw ConfigError("tileset: duplicate tile id " + std::to_string(t.id));
    }
    if (t.elevation.size() != cells || t.blocked_height.size() != cells) {
      throw ConfigError("tileset: tile '" + t.name + "' template is not " +
                        std::to_string(cols) + "x" + std::to_string(cols));
    }
    float max_elev = 0.0f;
    float max_block = 0.0f;
    for (std::size_t i = 0; i < cells; ++i) {
      if (t.elevation[i] < 0.0f) {
        throw ConfigError("tileset: tile '" + t.name + "' has negative elevation");
      }
      max_elev = std::max(max_elev, t.elevation[i]);
      max_block = std::max(max_block, t.blocked_height[i]);
    }
    if (t.surface == SurfaceClass::kFlat && max_elev > 0.0f) {
      throw ConfigError("tileset: flat tile '" + t.name + "' has nonzero elevation");
    }
    if (t.surface == SurfaceClass::kRough && max_elev > 0.3f + 1e-6f) {
      throw ConfigError("tileset: rough tile '" + t.name + "' exceeds 0.3 m elevation");
    }
    if (t.surface == SurfaceClass::kObstructed && max_block < 1.0f) {
      throw ConfigError("tileset: obstructed tile '" + t.name +
                        "' lacks a full-height blocked column");
    }
    if (t.weight <= 0.0) {
      throw ConfigError("tileset: tile '" + t.name + "' needs a positive weight");
    }
  }
  std::set<std::array<int, 3>> seen;
  for (const AdjacencyRule& r : rules) {
    if (!ids.count(r.a) || !ids.count(r.b) || r.side < 0 || r.side > 3) {
      throw ConfigError("tileset: adjacency rule references unknown tile or side");
    }
    seen.insert({r.a, r.side, r.b});
  }
  for (const AdjacencyRule& r : rules) {
    if (!seen.count({r.b, opposite_side(r.side), r.a})) {
      throw ConfigError("tileset: asymmetric adjacency rule (" + std::to_string(r.a) +
                        " side " + std::to_string(r.side) + " -> " + std::to_string(r.b) + ")");
    }
  }
}

std::vector<std::array<std::uint64_t, 4>> Tileset::compatibility() const {
  if (tiles.size() > 64) {
    throw ConfigError("tileset: compatibility masks support at most 64 tiles");
  }
  // Masks are indexed by position in `tiles`, not by id.
  std::vector<int> slot_of;
  int max_id = 0;
  for (const Tile& t : tiles) max_id = std::max(max_id, t.id);
  slot_of.assign(max_id + 1, -1);
  for (std::size_t i = 0; i < tiles.size(); ++i) slot_of[tiles[i].id] = static_cast<int>(i);

  std::vector<std::array<std::uint64_t, 4>> masks(tiles.size(), {0, 0, 0, 0});
  for (const AdjacencyRule& r : rules) {
    int a = slot_of[r.a];
    int b = slot_of[r.b];
    masks[a][r.side] |= std::uint64_t{1} << b;
  }
  return masks;
}

namespace {

constexpr int kCols = 20;       // columns per tile edge at 0.1 m
constexpr double kRes = 0.1;    // m
constexpr float kWallH = 2.0f;  // m, tile wall/pillar obstruction height

Tile blank_tile(int id, const char* name, SurfaceClass surface, double weight,
                std::array<int, 4> edge) {
  Tile t;
  t.id = id;
  t.name = name;
  t.surface = surface;
  t.weight = weight;
  t.edge = edge;
  t.elevation.assign(kCols * kCols, 0.0f);
  t.blocked_height.assign(kCols * kCols, 0.0f);
  return t;
}

/// Marks every column whose center lies in [x0, x1) x [y0, y1) as blocked.
void block_rect(Tile& t, double x0, double y0, double x1, double y1) {
  for (int cy = 0; cy < kCols; ++cy) {
    for (int cx = 0; cx < kCols; ++cx) {
      double x = (cx + 0.5) * kRes;
      double y = (cy + 0.5) * kRes;
      if (x >= x0 && x < x1 && y >= y0 && y < y1) {
        t.blocked_height[static_cast<std::size_t>(cy) * kCols + cx] = kWallH;
      }
    }
  }
}

void fill_bump(Tile& t, double amplitude, int lobes_x) {
  constexpr double kEdge = kCols * kRes;
  for (int cy = 0; cy < kCols; ++cy) {
    for (int cx = 0; cx < kCols; ++cx) {
      double x = (cx + 0.5) * kRes;
      double y = (cy + 0.5) * kRes;
      double sx = std::sin(std::numbers::pi * lobes_x * x / kEdge);
      double sy = std::sin(std::numbers::pi * y / kEdge);
      // Millimeter quantization keeps templates exact across serialization.
      double v = std::round(amplitude * sx * sx * sy * sy * 1000.0) / 1000.0;
      t.elevation[static_cast<std::size_t>(cy) * kCols + cx] = static_cast<float>(v);
    }
  }
}

}  // namespace

Tileset default_tileset() {
  // Edge profile codes: 0 = open flat boundary, 1 = wall crossing the side
  // at its midpoint. A wall edge can only meet another wall edge, so walls
  // continue across joints until a stub tile terminates them.
  constexpr int kOpen = 0;
  constexpr int kWall = 1;

  Tileset ts;
  auto& v = ts.tiles;

  v.push_back(blank_tile(0, "flat", SurfaceClass::kFlat, 3.0, {kOpen, kOpen, kOpen, kOpen}));

  Tile rough_a = blank_tile(1, "rough_dome", SurfaceClass::kRough, 1.0, {kOpen, kOpen, kOpen, kOpen});
  fill_bump(rough_a, 0.3, 1);
  v.push_back(rough_a);

  Tile rough_b =
      blank_tile(2, "rough_ridges", SurfaceClass::kRough, 1.0, {kOpen, kOpen, kOpen, kOpen});
  fill_bump(rough_b, 0.15, 2);
  v.push_back(rough_b);

  Tile pillar =
      blank_tile(3, "pillar", SurfaceClass::kObstructed, 0.7, {kOpen, kOpen, kOpen, kOpen});
  block_rect(pillar, 0.7, 0.7, 1.3, 1.3);
  v.push_back(pillar);

  Tile wall_ns =
      blank_tile(4, "wall_ns", SurfaceClass::kObstructed, 0.8, {kWall, kOpen, kWall, kOpen});
  block_rect(wall_ns, 0.9, 0.0, 1.1, 2.0);
  v.push_back(wall_ns);

  Tile wall_ew =
      blank_tile(5, "wall_ew", SurfaceClass::kObstructed, 0.8, {kOpen, kWall, kOpen, kWall});
  block_rect(wall_ew, 0.0, 0.9, 2.0, 1.1);
  v.push_back(wall_ew);

  Tile end_n =
      blank_tile(6, "wall_end_n", SurfaceClass::kObstructed, 0.4, {kWall, kOpen, kOpen, kOpen});
  block_rect(end_n, 0.9, 1.0, 1.1, 2.0);
  v.push_back(end_n);

  Tile end_e =
      blank_tile(7, "wall_end_e", SurfaceClass::kObstructed, 0.4, {kOpen, kWall, kOpen, kOpen});
  block_rect(end_e, 1.0, 0.9, 2.0, 1.1);
  v.push_back(end_e);

  Tile end_s =
      blank_tile(8, "wall_end_s", SurfaceClass::kObstructed, 0.4, {kOpen, kOpen, kWall, kOpen});
  block_rect(end_s, 0.9, 0.0, 1.1, 1.0);
  v.push_back(end_s);

  Tile end_w =
      blank_tile(9, "wall_end_w", SurfaceClass::kObstructed, 0.4, {kOpen, kOpen, kOpen, kWall});
  block_rect(end_w, 0.0, 0.9, 1.0, 1.1);
  v.push_back(end_w);

  Tile corner_ne =
      blank_tile(10, "corner_ne", SurfaceClass::kObstructed, 0.4, {kWall, kWall, kOpen, kOpen});
  block_rect(corner_ne, 0.9, 0.9, 1.1, 2.0);
  block_rect(corner_ne, 0.9, 0.9, 2.0, 1.1);
  v.push_back(corner_ne);

  Tile corner_se =
      blank_tile(11, "corner_se", SurfaceClass::kObstructed, 0.4, {kOpen, kWall, kWall, kOpen});
  block_rect(corner_se, 0.9, 0.0, 1.1, 1.1);
  block_rect(corner_se, 0.9, 0.9, 2.0, 1.1);
  v.push_back(corner_se);

  Tile corner_sw =
      blank_tile(12, "corner_sw", SurfaceClass::kObstructed, 0.4, {kOpen, kOpen, kWall, kWall});
  block_rect(corner_sw, 0.9, 0.0, 1.1, 1.1);
  block_rect(corner_sw, 0.0, 0.9, 1.1, 1.1);
  v.push_back(corner_sw);

  Tile corner_nw =
      blank_tile(13, "corner_nw", SurfaceClass::kObstructed, 0.4, {kWall, kOpen, kOpen, kWall});
  block_rect(corner_nw, 0.9, 0.9, 1.1, 2.0);
  block_rect(corner_nw, 0.0, 0.9, 1.1, 1.1);
  v.push_back(corner_nw);

  ts.rules = rules_from_edges(ts.tiles);
  ts.validate();
  return ts;
}

}  // namespace voxnav::worldgen
