#pragma once

#include <optional>

#include "suction/types.hpp"

namespace suction {

/// Bit set exactly where the posterior is strictly above 0.5.
[[nodiscard]] BloodMask threshold_mask(const PosteriorMap& posterior);

// 3x3 square structuring element; cells outside the grid count as background.
[[nodiscard]] BloodMask dilate3x3(const BloodMask& mask);
[[nodiscard]] BloodMask erode3x3(const BloodMask& mask);

/// Morphological closing (one dilation, then one erosion) to fill small holes.
[[nodiscard]] BloodMask denoise(const BloodMask& mask);

/// Largest connected component if it is strictly larger than gamma_B pixels,
/// otherwise nullopt. Size ties go to the component whose smallest (row, col)
/// pixel is lexicographically first.
[[nodiscard]] std::optional<BloodMask> largest_component(const BloodMask& mask, int gamma_B,
                                                         int connectivity);

/// Connected-component count, used by tests and the overlay renderer.
[[nodiscard]] int count_components(const BloodMask& mask, int connectivity);

}  // namespace suction
