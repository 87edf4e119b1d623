#pragma once

#include <string>
#include <utility>
#include <vector>

#include "suction/types.hpp"

namespace suction {

/// Volume threshold above which a cell renders as (and counts as) liquid.
inline constexpr double kRenderThreshold = 0.05;

/// Fraction of the surface-height excess moved to each lower neighbor per
/// step. 0.25 keeps the explicit 4-neighbor transport stable.
inline constexpr double kTransportCap = 0.25;

struct FluidSource {
  Pixel pixel;
  double emission_rate = 0.0;  // volume per frame
  int start_frame = 0;
  int end_frame = 0;           // exclusive; active while start <= t < end
};

/// Static cavity description: a heightfield floor that collects liquid plus
/// a background texture the liquid darkens.
struct CavityScene {
  std::string name;
  GridDims dims;
  std::vector<double> floor_height;  // lower collects fluid
  std::vector<double> texture;       // background intensity in [0,1]
  std::vector<FluidSource> sources;
};

struct FluidState {
  std::vector<double> volume;  // per cell, >= 0
  double total_emitted = 0.0;
  double total_removed = 0.0;

  [[nodiscard]] double sum_volume() const;
};

[[nodiscard]] FluidState make_fluid_state(const CavityScene& scene);

struct SimOutputs {
  Frame frame;
  BloodMask truth_mask;   // volume > kRenderThreshold
  FlowField truth_flow;   // net per-cell transport vector this step
};

/// Advances the cavity by one frame: emit, transport downhill, render.
/// Pure function of its inputs; identical inputs give identical outputs.
[[nodiscard]] std::pair<FluidState, SimOutputs> step(const CavityScene& scene,
                                                     const FluidState& state, int t);

/// Removes up to `capacity` volume from cells within `radius` of `at`,
/// nearest cell first. Removed volume is added to total_removed.
[[nodiscard]] FluidState apply_suction(const FluidState& state, const CavityScene& scene,
                                       Pixel at, double radius, double capacity);

/// Deterministic evaluation scenes plus the four-injection cavity variants.
[[nodiscard]] std::vector<CavityScene> builtin_scenes();

/// Looks a builtin scene up by name; throws std::invalid_argument if absent.
[[nodiscard]] CavityScene builtin_scene(const std::string& name);

[[nodiscard]] std::vector<std::string> builtin_scene_names();

}  // namespace suction
