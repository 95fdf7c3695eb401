#pragma once

#include <vector>

#include "voxnav/core/rng.hpp"
#include "voxnav/core/types.hpp"
#include "voxnav/worldgen/tileset.hpp"

namespace voxnav::worldgen {

/// A collapsed tile layout: `tiles[ty * gw + tx]` holds a tile id.
struct TileGrid {
  int gw = 0;
  int gh = 0;
  std::vector<int> tiles;

  int at(int tx, int ty) const { return tiles[static_cast<std::size_t>(ty) * gw + tx]; }
};

/// Collapses a gw x gh layout against the tileset's adjacency rules.
///
/// Repeatedly picks a minimum-entropy cell (fewest remaining candidates,
/// ties broken by the seeded stream), fixes it by weighted draw, and
/// propagates arc consistency to neighbors. A contradiction restarts the
/// whole solve with the next derived sub-seed, up to 32 restarts; running
/// out raises GenerationError naming the first cell that contradicted.
TileGrid wfc_collapse(const Tileset& tileset, int gw, int gh, Seed seed);

/// True when every adjacent pair in the grid satisfies some rule.
bool grid_satisfies_rules(const Tileset& tileset, const TileGrid& grid);

}  // namespace voxnav::worldgen
