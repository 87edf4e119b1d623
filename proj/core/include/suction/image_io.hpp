#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "suction/types.hpp"

namespace suction {

/// Thrown on malformed or unreadable image/config/data files.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- Portable graymap (P5, 8-bit) ---------------------------------------
// Intensities are quantized to 8 bits on write; the frame timestamp is kept
// in a header comment so that a write/read round trip preserves it.
void write_pgm(const std::filesystem::path& path, const Frame& frame);
[[nodiscard]] Frame read_pgm(const std::filesystem::path& path);

// --- Portable bitmap (P4, packed bits) -----------------------------------
void write_pbm(const std::filesystem::path& path, const BloodMask& mask);
[[nodiscard]] BloodMask read_pbm(const std::filesystem::path& path);

// --- Portable pixmap (P6, 8-bit RGB), used for overlay rendering ---------
void write_ppm(const std::filesystem::path& path, GridDims dims,
               const std::vector<std::uint8_t>& rgb);

// --- Raw little-endian float32 planes with a 16-byte header --------------
// Header: 8-byte magic "SFLOAT32", uint32 width, uint32 height (LE).
// Payload: one or more row-major float32 planes back to back.
struct RawPlanes {
  GridDims dims;
  std::vector<std::vector<float>> planes;
};

void write_raw_planes(const std::filesystem::path& path, const RawPlanes& data);
[[nodiscard]] RawPlanes read_raw_planes(const std::filesystem::path& path);

// Typed wrappers. Posterior and age maps are single-plane, flow is two
// planes (u then v).
void write_posterior(const std::filesystem::path& path, const PosteriorMap& map);
[[nodiscard]] PosteriorMap read_posterior(const std::filesystem::path& path);

void write_flow(const std::filesystem::path& path, const FlowField& flow);
[[nodiscard]] FlowField read_flow(const std::filesystem::path& path);

void write_age_counts(const std::filesystem::path& path, const AgeCountMap& counts);
[[nodiscard]] AgeCountMap read_age_counts(const std::filesystem::path& path);

// --- Trajectory text format: one "col row" line per waypoint -------------
void write_trajectory(const std::filesystem::path& path, const PixelTrajectory& traj);
[[nodiscard]] PixelTrajectory read_trajectory(const std::filesystem::path& path);

}  // namespace suction
