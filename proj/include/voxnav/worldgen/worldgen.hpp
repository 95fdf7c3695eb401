#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "voxnav/core/rng.hpp"
#include "voxnav/core/types.hpp"
#include "voxnav/core/voxel_world.hpp"
#include "voxnav/worldgen/tileset.hpp"
#include "voxnav/worldgen/wfc.hpp"

namespace voxnav::worldgen {

enum class WorldPreset { kCorridor, kRoom, kComplex1, kComplex2, kRandom };

const char* preset_name(WorldPreset preset);
WorldPreset preset_from_name(std::string_view name);  // ConfigError on unknown names

/// Requested obstacle counts per kind; used directly by the kRandom preset.
struct ObstacleCounts {
  int walls = 0;
  int tables = 0;
  int boxes = 0;

  int total() const { return walls + tables + boxes; }
};

struct WorldSpec {
  double extent_x = 20.0;  // m; must be divisible by tile_edge
  double extent_y = 20.0;  // m
  double tile_edge = 2.0;  // m
  WorldPreset preset = WorldPreset::kRandom;
  ObstacleCounts density;
  Seed seed{0};
};

/// Canonical start/goal pair: the centers of the two designated spawn regions.
struct SpawnPoints {
  double sx = 2.5;
  double sy = 2.5;
  double gx = 17.5;
  double gy = 17.5;
};

struct GeneratedWorld {
  VoxelWorld world;
  WorldPreset preset = WorldPreset::kRandom;
  Seed seed{0};
  SpawnPoints spawn;
  int obstacle_count = 0;  // placed walls + tables + boxes (wall presets: wall segments)
};

/// Bakes a collapsed tile layout into a voxel lattice: terrain elevation is
/// quantized to whole voxels, the sub-floor layer is filled, and obstructed
/// columns are occupied from local ground to their blocked height.
VoxelWorld rasterize(const Tileset& tileset, const TileGrid& grid, double world_height = 3.2);

/// A ground-only lattice (sub-floor layer occupied, elevation zero).
VoxelWorld make_ground_world(double extent_x, double extent_y, double world_height = 3.2);

/// Scatters walls, tables and floating boxes by rejection sampling. Every
/// accepted placement keeps the two spawn regions connected through the
/// free space (crouch-height band, 4-connected) and clear of the spawn
/// discs. Tables and boxes are slabs leaving `clearance` of free height
/// beneath; the slab base is rounded up to the voxel grid so the free band
/// is never smaller than the sampled clearance. 200 consecutive rejections
/// for one obstacle raise GenerationError. Returns the number placed.
int place_obstacles(VoxelWorld& world, const ObstacleCounts& counts, const SpawnPoints& spawn,
                    Rng& rng);

/// Builds one of the named benchmark layouts:
///  - Corridor: bounded wall maze whose banded route forces two long detours;
///    a stub wall adds a dead-end pocket. The straight start-goal segment is
///    blocked by construction.
///  - Room: a chamber around the map center with one walkable door on the far
///    side and a crouch-height crossing band in the east wall, plus slab
///    obstacles outside; the direct route is overhang-only.
///  - Complex1/Complex2: collapsed tile terrain plus light/heavy random
///    obstacle mixes between opposite-corner spawn regions.
/// Every preset is verified route-feasible with the global planner before
/// returning (posture-free layouts also with posture assists disabled);
/// infeasible draws retry with derived sub-seeds, then raise GenerationError.
GeneratedWorld preset_world(WorldPreset preset, Seed seed);

/// General entry: kRandom builds tile terrain plus `spec.density` obstacles;
/// named presets ignore the density field.
GeneratedWorld generate_world(const WorldSpec& spec);

}  // namespace voxnav::worldgen
