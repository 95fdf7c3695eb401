#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "voxnav/core/voxel_world.hpp"

namespace voxnav::curriculum {

/// Thresholds tying the planner's 2D passability model to the body geometry:
/// a crouched body needs 0.16 m of overhead room and 0.26 m laterally, a
/// standing one 0.36 m overhead and 0.30 m laterally (small margins added).
struct PlannerConfig {
  double clearance_any = 0.17;      // m overhead, lowest crouch
  double clearance_nominal = 0.37;  // m overhead, standing
  double inflate_any = 0.14;        // m planar: rolled half-extent 0.132 + margin
  double inflate_nominal = 0.16;    // m planar: half-width 0.15 + margin
  double crouch_below = 0.38;       // annotate crouch under this clearance
  double roll_below = 0.34;         // annotate roll under this lateral gap
  bool allow_posture = true;        // false: only standing-feasible space
  bool prefer_gvd = true;           // route along the medial skeleton if any
};

/// Column-wise passability derived from the voxel lattice.
struct TraversabilityMap {
  int nx = 0, ny = 0;
  double res = 0.1, ox = 0.0, oy = 0.0;
  std::vector<float> free_height;        // clearance above ground per column
  std::vector<std::uint8_t> blocked;     // under-clearance columns, no inflation
  std::vector<std::uint8_t> passable_any;
  std::vector<std::uint8_t> passable_nominal;
  std::vector<float> obstacle_dist;      // m to nearest blocked column / border
  std::vector<std::int32_t> nearest;     // generator component id per cell
  std::vector<std::uint8_t> gvd;         // medial-skeleton cells
  bool has_gvd = false;

  std::size_t idx(int ix, int iy) const { return static_cast<std::size_t>(ix) * ny + iy; }
  bool passable(int ix, int iy, bool allow_posture) const {
    if (ix < 0 || ix >= nx || iy < 0 || iy >= ny) return false;
    return (allow_posture ? passable_any : passable_nominal)[idx(ix, iy)] != 0;
  }
};

TraversabilityMap build_traversability(const VoxelWorld& world, const PlannerConfig& config = {});

enum class PostureClass : std::uint8_t { kNominal, kCrouch, kRoll };

struct PathAnnotation {
  double clearance = 10.0;  // m overhead
  double gap = 10.0;        // m lateral
  PostureClass posture = PostureClass::kNominal;
};

/// Planned route through the world with per-waypoint posture annotations.
struct GlobalPath {
  std::vector<std::array<double, 2>> points;
  std::vector<PathAnnotation> notes;
  std::vector<double> arclength;  // cumulative; arclength[0] == 0

  double length() const { return arclength.empty() ? 0.0 : arclength.back(); }
  std::array<double, 2> point_at(double s) const;
  const PathAnnotation& annotation_at(double s) const;
  double min_clearance(double s0, double s1) const;
  double min_gap(double s0, double s1) const;
};

/// Exact step-count cost of a grid path; the pair form keeps comparisons free
/// of accumulated floating-point noise.
struct GridCost {
  std::int64_t cardinal = 0;
  std::int64_t diagonal = 0;
  double meters(double res) const;
  bool operator==(const GridCost&) const = default;
};

/// Optimal 8-connected cost between the columns containing the two points
/// (A* with an octile heuristic). Throws PlanningError when unreachable or an
/// endpoint column is not passable.
GridCost shortest_grid_cost(const TraversabilityMap& map, double sx, double sy, double gx,
                            double gy, bool allow_posture);

/// Reference implementation of the same cost by plain Dijkstra expansion.
GridCost dijkstra_grid_cost(const TraversabilityMap& map, double sx, double sy, double gx,
                            double gy, bool allow_posture);

/// Shortest posture-feasible path length in meters, endpoint segments
/// included; the quantity evaluation normalizes realized path length by.
double shortest_path_length(const VoxelWorld& world, double sx, double sy, double gx, double gy,
                            const PlannerConfig& config = {});
double shortest_path_length(const TraversabilityMap& map, double sx, double sy, double gx,
                            double gy, const PlannerConfig& config);

/// Plans the navigation route: along the generalized-Voronoi skeleton of the
/// free space where one exists (clearance-preferring), else the shortest grid
/// path, annotated with overhead clearance and lateral gap per waypoint.
GlobalPath plan_global_path(const VoxelWorld& world, double sx, double sy, double gx, double gy,
                            const PlannerConfig& config = {});
GlobalPath plan_global_path(const TraversabilityMap& map, double sx, double sy, double gx,
                            double gy, const PlannerConfig& config);

}  // namespace voxnav::curriculum
