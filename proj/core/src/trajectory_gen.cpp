#include "suction/trajectory_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "suction/region_extraction.hpp"

namespace suction {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Visitation order: up, down, left, right, then the diagonals.
const int kOffC[8] = {0, 0, -1, 1, -1, 1, -1, 1};
const int kOffR[8] = {-1, 1, 0, 0, -1, -1, 1, 1};

bool lex_less(Pixel a, Pixel b) {
  return a.row < b.row || (a.row == b.row && a.col < b.col);
}

}  // namespace

AgeCountMap update_age(const AgeCountMap& counts, const BloodMask& mask) {
  require_same_dims(counts.dims, mask.dims, "update_age");
  AgeCountMap out = counts;
  for (std::size_t i = 0; i < out.counts.size(); ++i) {
    if (mask.bits[i]) ++out.counts[i];
  }
  return out;
}

Endpoints select_endpoints(const AgeCountMap& counts, const BloodMask& mask) {
  require_same_dims(counts.dims, mask.dims, "select_endpoints");
  if (mask.empty()) throw std::invalid_argument("select_endpoints: empty mask");

  BloodMask end_region = erode3x3(mask);
  if (end_region.empty()) end_region = mask;

  const GridDims dims = mask.dims;
  Endpoints ep{};
  std::int32_t best_min = std::numeric_limits<std::int32_t>::max();
  std::int32_t best_max = std::numeric_limits<std::int32_t>::min();
  bool have_start = false, have_end = false;
  for (int row = 0; row < dims.height; ++row) {
    for (int col = 0; col < dims.width; ++col) {
      const std::size_t i = dims.index({col, row});
      if (mask.bits[i] && (!have_start || counts.counts[i] < best_min)) {
        best_min = counts.counts[i];
        ep.start = {col, row};
        have_start = true;
      }
      if (end_region.bits[i] && (!have_end || counts.counts[i] > best_max)) {
        best_max = counts.counts[i];
        ep.end = {col, row};
        have_end = true;
      }
    }
  }
  return ep;
}

ClearanceRewardMap clearance_reward(const BloodMask& mask, double r, int gamma_r) {
  ClearanceRewardMap map{mask.dims, std::vector<double>(mask.dims.cells(), 0.0)};
  BloodMask eroded = mask;
  for (int i = 0; i < gamma_r; ++i) {
    eroded = erode3x3(eroded);
    if (eroded.empty()) break;
    for (std::size_t j = 0; j < map.reward.size(); ++j) {
      if (eroded.bits[j]) map.reward[j] += r;
    }
  }
  return map;
}

PixelTrajectory plan(Pixel start, Pixel end, const BloodMask& mask,
                     const ClearanceRewardMap& reward, int connectivity) {
  require_same_dims(mask.dims, reward.dims, "plan");
  if (connectivity != 4 && connectivity != 8) {
    throw std::invalid_argument("plan: connectivity must be 4 or 8");
  }
  if (!mask.dims.contains(start) || !mask.test(start)) {
    throw std::invalid_argument("plan: start outside mask");
  }
  if (!mask.dims.contains(end) || !mask.test(end)) {
    throw std::invalid_argument("plan: end outside mask");
  }

  const GridDims dims = mask.dims;
  std::vector<double> dist(dims.cells(), kInf);
  std::vector<std::size_t> parent(dims.cells(), SIZE_MAX);
  std::vector<std::uint8_t> done(dims.cells(), 0);

  using Entry = std::pair<double, std::size_t>;  // (cost, cell); cell index breaks ties
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const std::size_t s = dims.index(start);
  const std::size_t e = dims.index(end);
  dist[s] = 0.0;
  open.push({0.0, s});

  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (done[u] || d > dist[u]) continue;
    done[u] = 1;
    if (u == e) break;

    const Pixel pu = dims.pixel(u);
    for (int k = 0; k < connectivity; ++k) {
      const Pixel pq{pu.col + kOffC[k], pu.row + kOffR[k]};
      if (!dims.contains(pq)) continue;
      const std::size_t q = dims.index(pq);
      if (done[q] || !mask.bits[q]) continue;
      const double step_len = (k < 4) ? 1.0 : std::numbers::sqrt2;
      const double cost = step_len - reward.reward[q];
      const double cand = dist[u] + cost;
      if (cand < dist[q]) {
        dist[q] = cand;
        parent[q] = u;
        open.push({cand, q});
      }
    }
  }

  if (dist[e] == kInf) throw std::runtime_error("plan: no path between endpoints inside mask");

  PixelTrajectory traj;
  for (std::size_t u = e;; u = parent[u]) {
    traj.waypoints.push_back(dims.pixel(u));
    if (u == s) break;
  }
  std::reverse(traj.waypoints.begin(), traj.waypoints.end());
  return traj;
}

double trajectory_cost(const PixelTrajectory& traj, const ClearanceRewardMap& reward) {
  double cost = 0.0;
  for (std::size_t i = 1; i < traj.waypoints.size(); ++i) {
    const Pixel a = traj.waypoints[i - 1];
    const Pixel b = traj.waypoints[i];
    cost += std::hypot(static_cast<double>(b.col - a.col), static_cast<double>(b.row - a.row)) -
            reward.at(b);
  }
  return cost;
}

std::optional<PixelTrajectory> gate_and_emit(const PixelTrajectory& traj, int gamma_T) {
  if (static_cast<long long>(traj.waypoints.size()) > gamma_T) return traj;
  return std::nullopt;
}

}  // namespace suction
