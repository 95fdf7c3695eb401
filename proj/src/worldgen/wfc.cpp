#include "voxnav/worldgen/wfc.hpp"

#include <bit>
#include <optional>
#include <string>
#include <utility>

#include "voxnav/core/errors.hpp"

namespace voxnav::worldgen {

namespace {

struct NeighborStep {
  int dx;
  int dy;
};

// Indexed by Side: N = +y, E = +x, S = -y, W = -x.
constexpr NeighborStep kStep[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};

}  // namespace

TileGrid wfc_collapse(const Tileset& tileset, int gw, int gh, Seed seed) {
  if (tileset.tiles.empty()) {
    throw GenerationError("wave collapse: tileset is empty");
  }
  tileset.validate();
  const auto compat = tileset.compatibility();
  const int nt = static_cast<int>(tileset.tiles.size());
  const std::uint64_t full =
      nt == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nt) - 1;

  std::vector<double> weights(nt);
  for (int i = 0; i < nt; ++i) weights[i] = tileset.tiles[i].weight;

  const Rng base(seed, "wfc");
  std::optional<std::pair<int, int>> first_contradiction;
  constexpr int kMaxRestarts = 32;

  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    Rng rng = base.derive(static_cast<std::uint64_t>(restart));
    std::vector<std::uint64_t> dom(static_cast<std::size_t>(gw) * gh, full);

    auto note_contradiction = [&](int cell) {
      if (!first_contradiction) first_contradiction = {cell % gw, cell / gw};
    };

    // Arc-consistency sweep outward from `start`; false on an emptied domain.
    auto propagate = [&](int start) {
      std::vector<int> queue{start};
      while (!queue.empty()) {
        int c = queue.back();
        queue.pop_back();
        int cx = c % gw;
        int cy = c / gw;
        for (int side = 0; side < 4; ++side) {
          int nx = cx + kStep[side].dx;
          int ny = cy + kStep[side].dy;
          if (nx < 0 || nx >= gw || ny < 0 || ny >= gh) continue;
          int n = ny * gw + nx;
          std::uint64_t allowed = 0;
          std::uint64_t bits = dom[c];
          while (bits) {
            int t = std::countr_zero(bits);
            bits &= bits - 1;
            allowed |= compat[t][side];
          }
          std::uint64_t next = dom[n] & allowed;
          if (next == dom[n]) continue;
          dom[n] = next;
          if (next == 0) {
            note_contradiction(n);
            return false;
          }
          queue.push_back(n);
        }
      }
      return true;
    };

    // Initial arc-consistency sweep; catches rule sets that contradict
    // before any collapse happens (e.g. a side with no rules at all).
    bool failed = false;
    for (std::size_t i = 0; i < dom.size() && !failed; ++i) {
      failed = !propagate(static_cast<int>(i));
    }

    while (!failed) {
      // Minimum-entropy cell: fewest remaining candidates above one.
      int best_count = nt + 1;
      std::vector<int> ties;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        int count = std::popcount(dom[i]);
        if (count <= 1) continue;
        if (count < best_count) {
          best_count = count;
          ties.clear();
        }
        if (count == best_count) ties.push_back(static_cast<int>(i));
      }
      if (ties.empty()) {
        TileGrid grid{gw, gh, {}};
        grid.tiles.resize(dom.size());
        for (std::size_t i = 0; i < dom.size(); ++i) {
          grid.tiles[i] = tileset.tiles[std::countr_zero(dom[i])].id;
        }
        return grid;
      }

      int cell = ties[rng.uniform_int(ties.size())];
      std::vector<double> w;
      std::vector<int> slots;
      std::uint64_t bits = dom[cell];
      while (bits) {
        int t = std::countr_zero(bits);
        bits &= bits - 1;
        slots.push_back(t);
        w.push_back(weights[t]);
      }
      int chosen = slots[rng.weighted_index(w)];
      dom[cell] = std::uint64_t{1} << chosen;
      failed = !propagate(cell);
    }
  }

  std::string where = first_contradiction
                          ? "(" + std::to_string(first_contradiction->first) + ", " +
                                std::to_string(first_contradiction->second) + ")"
                          : "(unknown)";
  throw GenerationError("wave collapse failed after " + std::to_string(kMaxRestarts) +
                        " restarts; first contradicted cell " + where);
}

bool grid_satisfies_rules(const Tileset& tileset, const TileGrid& grid) {
  auto allowed = [&](int a, int side, int b) {
    for (const AdjacencyRule& r : tileset.rules) {
      if (r.a == a && r.side == side && r.b == b) return true;
    }
    return false;
  };
  for (int ty = 0; ty < grid.gh; ++ty) {
    for (int tx = 0; tx < grid.gw; ++tx) {
      if (tx + 1 < grid.gw && !allowed(grid.at(tx, ty), kSideE, grid.at(tx + 1, ty))) return false;
      if (ty + 1 < grid.gh && !allowed(grid.at(tx, ty), kSideN, grid.at(tx, ty + 1))) return false;
    }
  }
  return true;
}

}  // namespace voxnav::worldgen
