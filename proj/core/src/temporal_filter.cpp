#include "suction/temporal_filter.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace suction {

FilterState make_filter_state(GridDims dims, const PipelineConfig& cfg) {
  return FilterState{make_posterior(dims, cfg.p_prior), cfg, 0};
}

double neighbor_or_prob(std::span<const double> neighbor_probs) {
  const std::size_t n = neighbor_probs.size();
  if (n > 4) throw std::invalid_argument("neighbor_or_prob supports at most 4 neighbors");
  double total = 0.0;
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (subset & (1u << i)) prod *= neighbor_probs[i];
    }
    total += (std::popcount(subset) % 2 == 1) ? prod : -prod;
  }
  return total;
}

PosteriorMap predict(const FilterState& state) {
  const GridDims dims = state.posterior.dims;
  const PipelineConfig& cfg = state.cfg;
  const std::vector<double>& prev = state.posterior.prob;

  PosteriorMap out = make_posterior(dims);
  constexpr int dc[4] = {0, 0, -1, 1};  // up, down, left, right
  constexpr int dr[4] = {-1, 1, 0, 0};

  for (int row = 0; row < dims.height; ++row) {
    for (int col = 0; col < dims.width; ++col) {
      std::array<double, 4> nbr{};
      std::size_t n = 0;
      for (int k = 0; k < 4; ++k) {
        const Pixel q{col + dc[k], row + dr[k]};
        if (dims.contains(q)) nbr[n++] = prev[dims.index(q)];
      }
      const double p_k = neighbor_or_prob({nbr.data(), n});
      const std::size_t i = dims.index({col, row});
      const double p_b = prev[i];
      out.prob[i] = cfg.p_bb * p_b +
                    (cfg.p_nb_k * p_k + cfg.p_nb_nk * (1.0 - p_k)) * (1.0 - p_b);
    }
  }
  return out;
}

PosteriorMap update(const PosteriorMap& predicted, const DetectionMap& z,
                    const PipelineConfig& cfg) {
  require_same_dims(predicted.dims, z.dims, "update");
  PosteriorMap out = make_posterior(predicted.dims);
  for (std::size_t i = 0; i < out.prob.size(); ++i) {
    const double prior = predicted.prob[i];
    const bool hit = z.z[i] != 0;
    const double like_b = hit ? cfg.p_det_tp : 1.0 - cfg.p_det_tp;
    const double like_nb = hit ? cfg.p_det_fp : 1.0 - cfg.p_det_fp;
    const double num = like_b * prior;
    const double den = num + like_nb * (1.0 - prior);
    out.prob[i] = den > 0.0 ? num / den : 0.0;
  }
  return out;
}

FilterState filter_step(const FilterState& state, const DetectionMap& z) {
  require_same_dims(state.posterior.dims, z.dims, "filter_step");
  PosteriorMap posterior = update(predict(state), z, state.cfg);
  constexpr double kFloor = 1e-15;
  for (double& p : posterior.prob) p = std::clamp(p, kFloor, 1.0 - kFloor);
  return FilterState{std::move(posterior), state.cfg, state.t + 1};
}

}  // namespace suction
