#pragma once

#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "suction/types.hpp"

namespace suction {

enum class FlowEstimatorKind {
  ground_truth,  // consumes simulator transport fields
  classical,     // window-based least-squares with a 2-level pyramid
};

/// Per-pixel binary blood detection, z = b iff flow magnitude > gamma_o.
struct DetectionMap {
  GridDims dims;
  std::vector<std::uint8_t> z;

  [[nodiscard]] bool detected(Pixel p) const { return z[dims.index(p)] != 0; }
};

[[nodiscard]] inline DetectionMap make_detection_map(GridDims dims) {
  return DetectionMap{dims, std::vector<std::uint8_t>(dims.cells(), 0)};
}

/// Classical flow over `frames` (at least 2), reported on the downscaled
/// grid but with values in input pixels per frame, averaged over the
/// consecutive frame pairs.
[[nodiscard]] FlowField estimate_flow_classical(std::span<const Frame> frames, int downscale);

/// Ground-truth flow: each per-pair transport field is block-averaged to the
/// downscaled grid and the pairs are averaged. `truth` holds one transport
/// field per frame; the leading entry (the pair-less first frame) is ignored.
[[nodiscard]] FlowField estimate_flow_ground_truth(std::span<const FlowField> truth,
                                                   GridDims frame_dims, int downscale);

/// Thresholded detection: z set exactly where ||(u,v)|| > gamma_o.
[[nodiscard]] DetectionMap detect(const FlowField& flow, double gamma_o);

/// Ring buffer of the last `window` frames feeding either estimator kind.
/// No flow is produced until the buffer is full.
class FlowEstimator {
 public:
  FlowEstimator(FlowEstimatorKind kind, int window, int downscale);

  /// Classical path. Throws if this estimator needs ground-truth flow.
  void push(const Frame& frame);
  /// Ground-truth path; `truth_flow` is the transport that produced `frame`.
  void push(const Frame& frame, const FlowField& truth_flow);

  [[nodiscard]] bool ready() const;
  [[nodiscard]] FlowField estimate() const;

  [[nodiscard]] FlowEstimatorKind kind() const { return kind_; }
  [[nodiscard]] int window() const { return window_; }

 private:
  FlowEstimatorKind kind_;
  int window_;
  int downscale_;
  std::deque<Frame> frames_;
  std::deque<FlowField> truth_;
};

/// The downscaled grid for a full-resolution grid; requires exact divisibility.
[[nodiscard]] GridDims flow_dims(GridDims input, int downscale);

}  // namespace suction
