#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace suction {

/// Pixel coordinate as (column, row), origin at the top-left corner.
struct Pixel {
  int col = 0;
  int row = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

struct GridDims {
  int width = 0;
  int height = 0;

  [[nodiscard]] std::size_t cells() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  [[nodiscard]] bool contains(Pixel p) const {
    return p.col >= 0 && p.col < width && p.row >= 0 && p.row < height;
  }
  /// Row-major linear index of p. No bounds check.
  [[nodiscard]] std::size_t index(Pixel p) const {
    return static_cast<std::size_t>(p.row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(p.col);
  }
  [[nodiscard]] Pixel pixel(std::size_t idx) const {
    return Pixel{static_cast<int>(idx % static_cast<std::size_t>(width)),
                 static_cast<int>(idx / static_cast<std::size_t>(width))};
  }

  friend bool operator==(const GridDims&, const GridDims&) = default;
};

/// Thrown when two grid containers with different dimensions meet.
class dims_mismatch : public std::invalid_argument {
 public:
  dims_mismatch(const GridDims& a, const GridDims& b, const std::string& where)
      : std::invalid_argument(where + ": grid dims mismatch " +
                              std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                              std::to_string(b.width) + "x" + std::to_string(b.height)) {}
};

inline void require_same_dims(const GridDims& a, const GridDims& b, const char* where) {
  if (!(a == b)) throw dims_mismatch(a, b, where);
}

/// Single-channel intensity image, values in [0, 1].
struct Frame {
  GridDims dims;
  std::vector<double> pixels;  // row-major, dims.cells() entries
  int timestamp = 0;           // frame index

  [[nodiscard]] double at(Pixel p) const { return pixels[dims.index(p)]; }
  double& at(Pixel p) { return pixels[dims.index(p)]; }
};

[[nodiscard]] inline Frame make_frame(GridDims dims, double fill = 0.0, int timestamp = 0) {
  return Frame{dims, std::vector<double>(dims.cells(), fill), timestamp};
}

/// Per-pixel apparent motion, stored as separate horizontal/vertical planes.
/// Values are in input-resolution pixels per frame even when the grid itself
/// is at the reduced flow resolution.
struct FlowField {
  GridDims dims;
  std::vector<double> u;  // +u points right (increasing column)
  std::vector<double> v;  // +v points down (increasing row)

  [[nodiscard]] double magnitude_at(std::size_t idx) const;
};

[[nodiscard]] inline FlowField make_flow(GridDims dims) {
  return FlowField{dims, std::vector<double>(dims.cells(), 0.0),
                   std::vector<double>(dims.cells(), 0.0)};
}

/// Per-pixel probability of being blood.
struct PosteriorMap {
  GridDims dims;
  std::vector<double> prob;

  [[nodiscard]] double at(Pixel p) const { return prob[dims.index(p)]; }
  double& at(Pixel p) { return prob[dims.index(p)]; }
};

[[nodiscard]] inline PosteriorMap make_posterior(GridDims dims, double fill = 0.0) {
  return PosteriorMap{dims, std::vector<double>(dims.cells(), fill)};
}

/// Binary pixel mask.
struct BloodMask {
  GridDims dims;
  std::vector<std::uint8_t> bits;  // 0 or 1

  [[nodiscard]] bool test(Pixel p) const { return bits[dims.index(p)] != 0; }
  void set(Pixel p, bool v = true) { bits[dims.index(p)] = v ? 1 : 0; }
  [[nodiscard]] std::size_t count() const;
  [[nodiscard]] bool empty() const { return count() == 0; }
};

[[nodiscard]] inline BloodMask make_mask(GridDims dims) {
  return BloodMask{dims, std::vector<std::uint8_t>(dims.cells(), 0)};
}

/// Per-pixel count of frames spent labeled blood. Monotone non-decreasing.
struct AgeCountMap {
  GridDims dims;
  std::vector<std::int32_t> counts;

  [[nodiscard]] std::int32_t at(Pixel p) const { return counts[dims.index(p)]; }
};

[[nodiscard]] inline AgeCountMap make_age_counts(GridDims dims) {
  return AgeCountMap{dims, std::vector<std::int32_t>(dims.cells(), 0)};
}

/// Ordered pixel path; consecutive waypoints are grid neighbors.
struct PixelTrajectory {
  std::vector<Pixel> waypoints;

  [[nodiscard]] std::size_t length() const { return waypoints.size(); }
};

}  // namespace suction
