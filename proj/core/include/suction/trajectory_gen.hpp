#pragma once

#include <optional>

#include "suction/types.hpp"

namespace suction {

/// Per-pixel bonus from surviving iterative erosion; 0 outside the mask.
struct ClearanceRewardMap {
  GridDims dims;
  std::vector<double> reward;

  [[nodiscard]] double at(Pixel p) const { return reward[dims.index(p)]; }
};

/// counts += mask, per pixel.
[[nodiscard]] AgeCountMap update_age(const AgeCountMap& counts, const BloodMask& mask);

struct Endpoints {
  Pixel start;  // newest blood (minimal age)
  Pixel end;    // oldest blood (maximal age), source side
};

/// End point: maximal count within the mask eroded once (uneroded mask when
/// the erosion empties it). Start point: minimal count within the uneroded
/// mask. Ties resolve to the lexicographically smallest (row, col).
[[nodiscard]] Endpoints select_endpoints(const AgeCountMap& counts, const BloodMask& mask);

/// Iterative 3x3 erosion, up to gamma_r rounds or until empty, adding r per
/// survival.
[[nodiscard]] ClearanceRewardMap clearance_reward(const BloodMask& mask, double r, int gamma_r);

/// Minimum-cost path from start to end across mask pixels. Entering pixel q
/// from u costs ||q - u|| - reward(q); the config invariant r * gamma_r < 1
/// keeps every edge cost positive. Neighbors are visited up, down, left,
/// right (then diagonals for 8-connectivity) for deterministic tie-breaks.
[[nodiscard]] PixelTrajectory plan(Pixel start, Pixel end, const BloodMask& mask,
                                   const ClearanceRewardMap& reward, int connectivity);

/// Path cost under the plan() edge model, for oracles and reporting.
[[nodiscard]] double trajectory_cost(const PixelTrajectory& traj, const ClearanceRewardMap& reward);

/// Emits the trajectory iff it has strictly more than gamma_T waypoints.
[[nodiscard]] std::optional<PixelTrajectory> gate_and_emit(const PixelTrajectory& traj,
                                                           int gamma_T);

}  // namespace suction
