#include "suction/fluid_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace suction {

namespace {

void validate_scene(const CavityScene& scene) {
  if (scene.dims.width < 8 || scene.dims.height < 8) {
    throw std::invalid_argument("scene dims below 8x8 minimum: " + scene.name);
  }
  const std::size_t n = scene.dims.cells();
  if (scene.floor_height.size() != n || scene.texture.size() != n) {
    throw std::invalid_argument("scene plane size mismatch: " + scene.name);
  }
  for (double h : scene.floor_height) {
    if (!std::isfinite(h)) throw std::invalid_argument("non-finite floor height: " + scene.name);
  }
  if (scene.sources.empty()) throw std::invalid_argument("scene has no sources: " + scene.name);
  for (const auto& src : scene.sources) {
    if (!scene.dims.contains(src.pixel)) {
      throw std::invalid_argument("source outside scene: " + scene.name);
    }
  }
}

double quantize8(double v) { return std::lround(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0; }

}  // namespace

double FluidState::sum_volume() const {
  return std::accumulate(volume.begin(), volume.end(), 0.0);
}

FluidState make_fluid_state(const CavityScene& scene) {
  validate_scene(scene);
  FluidState state;
  state.volume.assign(scene.dims.cells(), 0.0);
  return state;
}

std::pair<FluidState, SimOutputs> step(const CavityScene& scene, const FluidState& state, int t) {
  const GridDims dims = scene.dims;
  if (state.volume.size() != dims.cells()) {
    throw dims_mismatch(dims, GridDims{static_cast<int>(state.volume.size()), 1}, "step");
  }

  FluidState next = state;
  for (const FluidSource& src : scene.sources) {
    if (t >= src.start_frame && t < src.end_frame) {
      next.volume[dims.index(src.pixel)] += src.emission_rate;
      next.total_emitted += src.emission_rate;
    }
  }

  // Synchronous transport from the post-emission snapshot.
  const std::vector<double> vol = next.volume;
  std::vector<double> surface(vol.size());
  for (std::size_t i = 0; i < vol.size(); ++i) surface[i] = scene.floor_height[i] + vol[i];

  SimOutputs out;
  out.truth_flow = make_flow(dims);

  constexpr int dc[4] = {0, 0, -1, 1};  // up, down, left, right
  constexpr int dr[4] = {-1, 1, 0, 0};

  std::vector<double> delta(vol.size(), 0.0);
  for (int row = 0; row < dims.height; ++row) {
    for (int col = 0; col < dims.width; ++col) {
      const std::size_t u = dims.index({col, row});
      if (vol[u] <= 0.0) continue;

      double want[4] = {0, 0, 0, 0};
      double want_total = 0.0;
      for (int k = 0; k < 4; ++k) {
        const Pixel q{col + dc[k], row + dr[k]};
        if (!dims.contains(q)) continue;
        const double diff = surface[u] - surface[dims.index(q)];
        if (diff > 0.0) {
          want[k] = kTransportCap * diff;
          want_total += want[k];
        }
      }
      if (want_total <= 0.0) continue;
      const double scale = want_total > vol[u] ? vol[u] / want_total : 1.0;

      for (int k = 0; k < 4; ++k) {
        if (want[k] <= 0.0) continue;
        const double f = want[k] * scale;
        const std::size_t q = dims.index({col + dc[k], row + dr[k]});
        delta[u] -= f;
        delta[q] += f;
        // Transfer u->q registers as motion at both endpoints.
        out.truth_flow.u[u] += f * dc[k];
        out.truth_flow.v[u] += f * dr[k];
        out.truth_flow.u[q] += f * dc[k];
        out.truth_flow.v[q] += f * dr[k];
      }
    }
  }
  for (std::size_t i = 0; i < vol.size(); ++i) {
    next.volume[i] = std::max(0.0, vol[i] + delta[i]);
  }

  out.frame = make_frame(dims, 0.0, t);
  out.truth_mask = make_mask(dims);
  for (std::size_t i = 0; i < vol.size(); ++i) {
    const double wet = std::min(next.volume[i], 1.0);
    out.frame.pixels[i] = quantize8(scene.texture[i] * (1.0 - wet));
    out.truth_mask.bits[i] = next.volume[i] > kRenderThreshold ? 1 : 0;
  }
  return {std::move(next), std::move(out)};
}

FluidState apply_suction(const FluidState& state, const CavityScene& scene, Pixel at,
                         double radius, double capacity) {
  if (radius < 1.0) throw std::invalid_argument("suction radius must be >= 1");
  const GridDims dims = scene.dims;
  if (state.volume.size() != dims.cells()) {
    throw dims_mismatch(dims, GridDims{static_cast<int>(state.volume.size()), 1}, "apply_suction");
  }

  struct Cell {
    double dist;
    int row;
    int col;
  };
  std::vector<Cell> cells;
  const int ri = static_cast<int>(std::floor(radius));
  for (int row = std::max(0, at.row - ri); row <= std::min(dims.height - 1, at.row + ri); ++row) {
    for (int col = std::max(0, at.col - ri); col <= std::min(dims.width - 1, at.col + ri); ++col) {
      const double d = std::hypot(static_cast<double>(col - at.col),
                                  static_cast<double>(row - at.row));
      if (d <= radius) cells.push_back({d, row, col});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
  });

  FluidState next = state;
  double remaining = capacity;
  for (const Cell& cell : cells) {
    if (remaining <= 0.0) break;
    const std::size_t i = dims.index({cell.col, cell.row});
    const double take = std::min(next.volume[i], remaining);
    if (take <= 0.0) continue;
    next.volume[i] -= take;
    next.total_removed += take;
    remaining -= take;
  }
  return next;
}

// --- builtin scenes -------------------------------------------------------

namespace {

constexpr int kSceneW = 128;
constexpr int kSceneH = 96;

std::vector<double> smooth_noise_texture(GridDims dims, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> tex(dims.cells());
  for (double& v : tex) v = dist(rng);

  // Two 3x3 box blurs leave enough gradient for window-based flow.
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<double> blurred(tex.size());
    for (int row = 0; row < dims.height; ++row) {
      for (int col = 0; col < dims.width; ++col) {
        double sum = 0.0;
        int n = 0;
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            const Pixel p{col + dc, row + dr};
            if (!dims.contains(p)) continue;
            sum += tex[dims.index(p)];
            ++n;
          }
        }
        blurred[dims.index({col, row})] = sum / n;
      }
    }
    tex = std::move(blurred);
  }
  for (double& v : tex) v = 0.45 + 0.4 * v;
  return tex;
}

CavityScene base_scene(const std::string& name, std::uint32_t texture_seed) {
  CavityScene scene;
  scene.name = name;
  scene.dims = {kSceneW, kSceneH};
  scene.floor_height.assign(scene.dims.cells(), 0.0);
  scene.texture = smooth_noise_texture(scene.dims, texture_seed);
  return scene;
}

void for_each_cell(GridDims dims, const std::function<double(int col, int row)>& f,
                   std::vector<double>& out) {
  for (int row = 0; row < dims.height; ++row) {
    for (int col = 0; col < dims.width; ++col) {
      out[dims.index({col, row})] = f(col, row);
    }
  }
}

CavityScene scene_slope() {
  CavityScene s = base_scene("slope", 11);
  const double cx = kSceneW / 2.0;
  for_each_cell(s.dims,
                [&](int col, int row) {
                  const double downhill = 0.35 * (kSceneH - 1 - row);
                  const double groove = std::min(0.4 * std::abs(col - cx), 8.0);
                  return downhill + groove;
                },
                s.floor_height);
  s.sources.push_back({{kSceneW / 2, 6}, 6.0, 0, 61});
  return s;
}

CavityScene scene_channel() {
  CavityScene s = base_scene("channel", 12);
  const double cx = kSceneW / 2.0;
  const Pixel basin{kSceneW / 2, 74};
  for_each_cell(s.dims,
                [&](int col, int row) {
                  double h = 0.25 * (kSceneH - 1 - row);
                  h += std::min(0.6 * std::abs(col - cx), 10.0);
                  const double db = std::hypot(col - basin.col + 0.0, row - basin.row + 0.0);
                  if (db < 14.0) h = std::min(h, 0.03 * db * db);
                  return h;
                },
                s.floor_height);
  s.sources.push_back({{kSceneW / 2, 8}, 6.0, 0, 61});
  return s;
}

CavityScene scene_basin() {
  CavityScene s = base_scene("basin", 13);
  const double cx = kSceneW / 2.0;
  const double cy = kSceneH * 0.62;
  for_each_cell(s.dims,
                [&](int col, int row) {
                  const double d = std::hypot(col - cx, row - cy);
                  return std::min(0.02 * d * d, 18.0);
                },
                s.floor_height);
  s.sources.push_back({{kSceneW / 2, 10}, 6.0, 0, 61});
  return s;
}

CavityScene scene_fork() {
  CavityScene s = base_scene("fork", 14);
  const double cx = kSceneW / 2.0;
  const int fork_row = 40;
  for_each_cell(s.dims,
                [&](int col, int row) {
                  const double downhill = 0.3 * (kSceneH - 1 - row);
                  double lateral;
                  if (row < fork_row) {
                    lateral = std::abs(col - cx);
                  } else {
                    const double drift = 0.55 * (row - fork_row);
                    const double left = std::abs(col - (cx - drift));
                    const double right = std::abs(col - (cx + drift));
                    lateral = std::min(left, right);
                  }
                  return downhill + std::min(0.45 * lateral, 9.0);
                },
                s.floor_height);
  s.sources.push_back({{kSceneW / 2, 6}, 7.0, 0, 61});
  return s;
}

CavityScene scene_ridge() {
  CavityScene s = base_scene("ridge", 15);
  for_each_cell(s.dims,
                [&](int col, int row) {
                  // Diagonal valley line drifting right as it descends.
                  const double valley_col = 24.0 + 0.8 * row;
                  const double downhill = 0.32 * (kSceneH - 1 - row);
                  return downhill + std::min(0.5 * std::abs(col - valley_col), 9.0);
                },
                s.floor_height);
  s.sources.push_back({{24, 6}, 6.0, 0, 61});
  return s;
}

CavityScene scene_meander() {
  CavityScene s = base_scene("meander", 16);
  const double cx = kSceneW / 2.0;
  for_each_cell(s.dims,
                [&](int col, int row) {
                  const double wander = 20.0 * std::sin(row * 2.0 * 3.14159265358979 / 64.0);
                  const double downhill = 0.3 * (kSceneH - 1 - row);
                  return downhill + std::min(0.45 * std::abs(col - (cx + wander)), 9.0);
                },
                s.floor_height);
  s.sources.push_back({{kSceneW / 2, 6}, 6.0, 0, 61});
  return s;
}

CavityScene scene_cavity4(const std::string& corner) {
  CavityScene s = base_scene("cavity4_" + corner, 17);
  // Central basin with its low point pulled into the bottom-left quadrant.
  const double lx = 0.22 * kSceneW;
  const double ly = 0.80 * kSceneH;
  for_each_cell(s.dims,
                [&](int col, int row) {
                  const double d = std::hypot(col - lx, row - ly);
                  return std::min(0.012 * d * d, 16.0);
                },
                s.floor_height);

  const int m = 10;  // corner inset
  const Pixel tl{m, m};
  const Pixel tr{kSceneW - 1 - m, m};
  const Pixel bl{m, kSceneH - 1 - m};
  const Pixel br{kSceneW - 1 - m, kSceneH - 1 - m};
  Pixel active = bl;
  if (corner == "tl") active = tl;
  else if (corner == "tr") active = tr;
  else if (corner == "bl") active = bl;
  else if (corner == "br") active = br;
  else throw std::invalid_argument("unknown cavity corner: " + corner);
  s.sources.push_back({active, 6.0, 0, 48});
  return s;
}

}  // namespace

std::vector<CavityScene> builtin_scenes() {
  std::vector<CavityScene> scenes;
  scenes.push_back(scene_slope());
  scenes.push_back(scene_channel());
  scenes.push_back(scene_basin());
  scenes.push_back(scene_fork());
  scenes.push_back(scene_ridge());
  scenes.push_back(scene_meander());
  scenes.push_back(scene_cavity4("tl"));
  scenes.push_back(scene_cavity4("tr"));
  scenes.push_back(scene_cavity4("bl"));
  scenes.push_back(scene_cavity4("br"));
  return scenes;
}

CavityScene builtin_scene(const std::string& name) {
  for (auto& scene : builtin_scenes()) {
    if (scene.name == name) return scene;
  }
  throw std::invalid_argument("unknown scene: " + name);
}

std::vector<std::string> builtin_scene_names() {
  std::vector<std::string> names;
  for (const auto& scene : builtin_scenes()) names.push_back(scene.name);
  return names;
}

}  // namespace suction
