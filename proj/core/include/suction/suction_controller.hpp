#pragma once

#include <array>
#include <optional>
#include <vector>

#include "suction/fluid_sim.hpp"
#include "suction/types.hpp"

namespace suction {

using Vec3 = std::array<double, 3>;  // x, y in grid units; depth

enum class ToolPhase { traveling, probing };

struct ToolState {
  Vec3 position{0.0, 0.0, 0.0};
  ToolPhase phase = ToolPhase::traveling;
};

struct ControllerParams {
  double gamma_s = 0.75;        // max step per tick, grid units
  double arrive_tol = 2.0;      // waypoint arrival distance
  double probe_depth = 5.0;     // down-and-up oscillation amplitude
  int tick_rate = 4;            // controller ticks per simulator frame
  double suction_radius = 8.0;  // removal radius per tick, grid units
  double suction_capacity = 2.0;  // removal volume per tick
  int waypoint_stride = 3;      // send every k-th waypoint; endpoints always
  int pixel_scale = 1;          // trajectory pixel -> scene pixel factor
  int tick_budget = 10000;
};

/// Clamped move toward the goal: the full remaining distance when it is
/// within gamma_s, otherwise exactly gamma_s along the goal direction.
[[nodiscard]] ToolState step_toward(const ToolState& tool, const Vec3& goal,
                                    const ControllerParams& params);

/// Scene-resolution pixel center with the floor height as depth.
[[nodiscard]] Vec3 pixel_to_world(Pixel p, const CavityScene& scene);

struct TickRecord {
  int tick = 0;
  Vec3 position{};
  double removed_cumulative = 0.0;
  ToolPhase phase = ToolPhase::traveling;
  int waypoint_index = -1;
};

struct WaypointArrival {
  int waypoint_index = 0;
  int tick = 0;
  double distance = 0.0;  // to the goal when arrival was declared
};

struct ExecutionReport {
  std::vector<TickRecord> ticks;
  std::vector<WaypointArrival> arrivals;
  double volume_removed = 0.0;
  int ticks_used = 0;
  bool aborted = false;  // tick budget ran out
};

/// Follows the (decimated) trajectory against the live cavity: clamped steps
/// toward each waypoint, one down-up probe on arrival, suction applied every
/// tick at the tool footprint. The simulator advances one frame every
/// tick_rate ticks, starting from frame index start_t.
[[nodiscard]] std::pair<FluidState, ExecutionReport> execute(
    const PixelTrajectory& traj, const CavityScene& scene, const FluidState& state,
    const ControllerParams& params, int start_t,
    std::optional<ToolState> initial = std::nullopt);

/// Waypoints actually sent to the controller: every waypoint_stride-th one,
/// first and last always included.
[[nodiscard]] std::vector<Pixel> decimate_waypoints(const PixelTrajectory& traj, int stride);

}  // namespace suction
