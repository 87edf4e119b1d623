#pragma once

#include <span>

#include "suction/config.hpp"
#include "suction/flow_estimation.hpp"
#include "suction/types.hpp"

namespace suction {

/// State of the per-pixel two-state temporal filter. The posterior holds
/// P(pixel is blood | all detections so far).
struct FilterState {
  PosteriorMap posterior;
  PipelineConfig cfg;
  int t = 0;
};

/// Fresh filter with every pixel at cfg.p_prior.
[[nodiscard]] FilterState make_filter_state(GridDims dims, const PipelineConfig& cfg);

/// Probability that at least one neighbor is blood, given independent
/// per-neighbor probabilities. Computed with the inclusion-exclusion
/// expansion over all non-empty neighbor subsets; algebraically equal to
/// 1 - prod(1 - p_i).
[[nodiscard]] double neighbor_or_prob(std::span<const double> neighbor_probs);

/// Transition step. Every pixel reads the same pre-step posterior snapshot,
/// so the result is independent of evaluation order. Boundary pixels use
/// their in-grid neighbors only.
[[nodiscard]] PosteriorMap predict(const FilterState& state);

/// Measurement step: per-pixel two-state Bayes update with the configured
/// detector likelihoods, then renormalization.
[[nodiscard]] PosteriorMap update(const PosteriorMap& predicted, const DetectionMap& z,
                                  const PipelineConfig& cfg);

/// predict followed by update; advances t. Values are clamped to
/// [1e-15, 1 - 1e-15] afterwards so repeated updates cannot round to an
/// absorbing 0 or 1.
[[nodiscard]] FilterState filter_step(const FilterState& state, const DetectionMap& z);

}  // namespace suction
