#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace suction {

/// Pipeline parameters. Field names double as the keys of the key=value
/// config file format.
struct PipelineConfig {
  double gamma_o = 0.45;   // flow-magnitude detection threshold (pixels/frame)
  int gamma_B = 20;        // minimum region size (pixels)
  int gamma_r = 4;         // max clearance erosions
  int gamma_T = 30;        // minimum trajectory length (waypoints)
  double r = 0.2;          // clearance reward per erosion survived

  double p_det_tp = 0.95;  // P(z=b | p=b)
  double p_det_fp = 0.2;   // P(z=b | p=not b)
  double p_prior = 0.1;    // P(p0=b)
  double p_bb = 0.98;      // P(p_{t+1}=b | p_t=b)
  double p_nb_k = 0.85;    // P(p_{t+1}=b | p_t=not b, k=b)
  double p_nb_nk = 0.01;   // P(p_{t+1}=b | p_t=not b, k=not b)

  int connectivity = 4;    // 4 or 8
  int flow_downscale = 4;  // probability map lives at input dims / flow_downscale

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

[[nodiscard]] PipelineConfig default_config();

/// Returns std::nullopt when every invariant holds, otherwise the name of the
/// first violated invariant.
[[nodiscard]] std::optional<std::string> validate_config(const PipelineConfig& cfg);

/// key=value file, one key per line, keys exactly as the field names above.
/// Lines that are blank or start with '#' are skipped.
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const PipelineConfig& cfg);

}  // namespace suction
