#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace voxnav {

/// Dense occupancy lattice plus a per-column ground elevation map.
/// Ground truth for collision, planning and sensing.
///
/// Columns are z-contiguous: bit index (ix*ny + iy)*nz + iz. The layer at
/// iz = 0 sits just below z = 0 so flat ground still owns a terrain voxel.
class VoxelWorld {
 public:
  VoxelWorld() = default;
  VoxelWorld(int nx, int ny, int nz, double resolution, double ox, double oy, double oz)
      : nx_(nx),
        ny_(ny),
        nz_(nz),
        res_(resolution),
        origin_{ox, oy, oz},
        bits_((static_cast<std::size_t>(nx) * ny * nz + 63) / 64, 0),
        ground_(static_cast<std::size_t>(nx) * ny, 0.0f) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double resolution() const { return res_; }
  double origin_x() const { return origin_[0]; }
  double origin_y() const { return origin_[1]; }
  double origin_z() const { return origin_[2]; }

  // Planar extent in meters.
  double width() const { return nx_ * res_; }
  double depth() const { return ny_ * res_; }
  double top_z() const { return origin_[2] + nz_ * res_; }

  bool in_bounds(int ix, int iy, int iz) const {
    return ix >= 0 && ix < nx_ && iy >= 0 && iy < ny_ && iz >= 0 && iz < nz_;
  }
  bool in_bounds_xy(int ix, int iy) const { return ix >= 0 && ix < nx_ && iy >= 0 && iy < ny_; }

  /// Occupancy lookup; cells outside the lattice read as free.
  bool occupied(int ix, int iy, int iz) const {
    if (!in_bounds(ix, iy, iz)) return false;
    std::size_t bit = cell_index(ix, iy, iz);
    return (bits_[bit >> 6] >> (bit & 63)) & 1u;
  }

  bool occupied_at(double x, double y, double z) const {
    return occupied(index_x(x), index_y(y), index_z(z));
  }

  void set_occupied(int ix, int iy, int iz, bool value) {
    if (!in_bounds(ix, iy, iz)) return;
    std::size_t bit = cell_index(ix, iy, iz);
    if (value) {
      bits_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
    } else {
      bits_[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63));
    }
  }

  /// Fills an axis-aligned box given in world coordinates (inclusive of any
  /// voxel whose cell overlaps the box interior).
  void fill_box(double x0, double y0, double z0, double x1, double y1, double z1) {
    int ix0 = std::max(0, static_cast<int>(std::floor((x0 - origin_[0]) / res_ + 1e-9)));
    int iy0 = std::max(0, static_cast<int>(std::floor((y0 - origin_[1]) / res_ + 1e-9)));
    int iz0 = std::max(0, static_cast<int>(std::floor((z0 - origin_[2]) / res_ + 1e-9)));
    int ix1 = std::min(nx_ - 1, static_cast<int>(std::ceil((x1 - origin_[0]) / res_ - 1e-9)) - 1);
    int iy1 = std::min(ny_ - 1, static_cast<int>(std::ceil((y1 - origin_[1]) / res_ - 1e-9)) - 1);
    int iz1 = std::min(nz_ - 1, static_cast<int>(std::ceil((z1 - origin_[2]) / res_ - 1e-9)) - 1);
    for (int ix = ix0; ix <= ix1; ++ix)
      for (int iy = iy0; iy <= iy1; ++iy)
        for (int iz = iz0; iz <= iz1; ++iz) set_occupied(ix, iy, iz, true);
  }

  float ground_elevation(int ix, int iy) const {
    ix = std::clamp(ix, 0, nx_ - 1);
    iy = std::clamp(iy, 0, ny_ - 1);
    return ground_[static_cast<std::size_t>(ix) * ny_ + iy];
  }

  /// Ground elevation at a world-frame planar point (clamped at the border).
  double ground_at(double x, double y) const { return ground_elevation(index_x(x), index_y(y)); }

  void set_ground_elevation(int ix, int iy, float elevation) {
    if (!in_bounds_xy(ix, iy)) return;
    ground_[static_cast<std::size_t>(ix) * ny_ + iy] = elevation;
  }

  /// World z of the bottom face of the lowest occupied voxel in the column
  /// strictly above `above_z`; +inf when the column is clear to the top.
  double first_occupied_above(int ix, int iy, double above_z) const {
    if (!in_bounds_xy(ix, iy)) return std::numeric_limits<double>::infinity();
    // Lowest voxel whose bottom face lies at or above the query height.
    int iz0 = std::max(0, static_cast<int>(std::ceil((above_z - origin_[2]) / res_ - 1e-9)));
    for (int iz = iz0; iz < nz_; ++iz) {
      if (occupied(ix, iy, iz)) return origin_[2] + iz * res_;
    }
    return std::numeric_limits<double>::infinity();
  }

  /// World z of the top face of the highest occupied voxel in the column
  /// (obstacles included); ground elevation when the column holds none.
  double column_top(int ix, int iy) const {
    if (!in_bounds_xy(ix, iy)) return top_z();
    for (int iz = nz_ - 1; iz >= 0; --iz) {
      if (occupied(ix, iy, iz)) return origin_[2] + (iz + 1) * res_;
    }
    return ground_elevation(ix, iy);
  }

  int index_x(double x) const { return static_cast<int>(std::floor((x - origin_[0]) / res_)); }
  int index_y(double y) const { return static_cast<int>(std::floor((y - origin_[1]) / res_)); }
  int index_z(double z) const { return static_cast<int>(std::floor((z - origin_[2]) / res_)); }

  double center_x(int ix) const { return origin_[0] + (ix + 0.5) * res_; }
  double center_y(int iy) const { return origin_[1] + (iy + 0.5) * res_; }
  double center_z(int iz) const { return origin_[2] + (iz + 0.5) * res_; }

  const std::vector<std::uint64_t>& raw_bits() const { return bits_; }
  std::vector<std::uint64_t>& raw_bits() { return bits_; }
  const std::vector<float>& raw_ground() const { return ground_; }
  std::vector<float>& raw_ground() { return ground_; }

  bool operator==(const VoxelWorld& other) const = default;

 private:
  std::size_t cell_index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * ny_ + iy) * nz_ + iz;
  }

  int nx_ = 0, ny_ = 0, nz_ = 0;
  double res_ = 0.1;
  std::array<double, 3> origin_{0.0, 0.0, 0.0};
  std::vector<std::uint64_t> bits_;
  std::vector<float> ground_;
};

}  // namespace voxnav
