#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace voxnav::worldgen {

/// Terrain tile vocabulary for the constraint-based layout generator.
///
/// Tiles are 2D layout patches with per-column height data: an elevation
/// offset (terrain) and an obstruction height (walls/pillars) for every
/// column of the tile footprint. Adjacency is decided by integer edge
/// profiles: two tiles may abut iff the codes of the touching sides match,
/// which makes the generated rule set symmetric by construction.

enum class SurfaceClass { kFlat, kRough, kObstructed };

/// Sides in world orientation: N = +y, E = +x, S = -y, W = -x.
enum Side : int { kSideN = 0, kSideE = 1, kSideS = 2, kSideW = 3 };

inline constexpr int opposite_side(int side) { return (side + 2) & 3; }

struct Tile {
  int id = 0;
  std::string name;
  SurfaceClass surface = SurfaceClass::kFlat;
  double weight = 1.0;
  /// Edge profile code per side (index with Side). Equal codes join.
  std::array<int, 4> edge{0, 0, 0, 0};
  /// Per-column terrain elevation in meters, row-major [cy * columns + cx].
  std::vector<float> elevation;
  /// Per-column obstruction height above local ground in meters (0 = clear).
  std::vector<float> blocked_height;
};

struct AdjacencyRule {
  int a = 0;
  int side = 0;  // Side of tile `a` that faces tile `b`.
  int b = 0;

  bool operator==(const AdjacencyRule&) const = default;
};

/// Builds the full rule list implied by edge-profile matching.
std::vector<AdjacencyRule> rules_from_edges(const std::vector<Tile>& tiles);

struct Tileset {
  double tile_edge = 2.0;   // m
  double resolution = 0.1;  // m per column
  std::vector<Tile> tiles;
  std::vector<AdjacencyRule> rules;

  int columns() const { return static_cast<int>(tile_edge / resolution + 0.5); }

  /// Checks template sizes, surface-class bounds, rule symmetry and rule
  /// id validity. Throws ConfigError describing the first violation.
  void validate() const;

  /// Per-tile, per-side bitmask of compatible neighbor tiles. Requires at
  /// most 64 tiles (throws ConfigError beyond that).
  std::vector<std::array<std::uint64_t, 4>> compatibility() const;
};

/// The tileset shipped in the binary: flat ground, two smooth rough-terrain
/// bumps, a pillar, and a wall family (straights, stubs, corners) whose edge
/// profiles force walls to continue or terminate cleanly across tile joints.
Tileset default_tileset();

}  // namespace voxnav::worldgen
