#include "suction/flow_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace suction {

GridDims flow_dims(GridDims input, int downscale) {
  if (downscale < 1) throw std::invalid_argument("downscale must be positive");
  if (input.width % downscale != 0 || input.height % downscale != 0) {
    throw std::invalid_argument("frame dims not divisible by flow downscale");
  }
  return {input.width / downscale, input.height / downscale};
}

namespace {

// Plain image plane used by the pyramid.
struct Plane {
  GridDims dims;
  std::vector<double> v;

  [[nodiscard]] double at(int col, int row) const {
    col = std::clamp(col, 0, dims.width - 1);
    row = std::clamp(row, 0, dims.height - 1);
    return v[dims.index({col, row})];
  }
};

Plane box_downsample(const Plane& src, int factor) {
  Plane dst;
  dst.dims = {std::max(1, src.dims.width / factor), std::max(1, src.dims.height / factor)};
  dst.v.assign(dst.dims.cells(), 0.0);
  for (int row = 0; row < dst.dims.height; ++row) {
    for (int col = 0; col < dst.dims.width; ++col) {
      double sum = 0.0;
      int n = 0;
      for (int dr = 0; dr < factor; ++dr) {
        for (int dc = 0; dc < factor; ++dc) {
          const Pixel p{col * factor + dc, row * factor + dr};
          if (!src.dims.contains(p)) continue;
          sum += src.v[src.dims.index(p)];
          ++n;
        }
      }
      dst.v[dst.dims.index({col, row})] = n > 0 ? sum / n : 0.0;
    }
  }
  return dst;
}

double bilinear(const Plane& img, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  const double v00 = img.at(x0, y0);
  const double v10 = img.at(x0 + 1, y0);
  const double v01 = img.at(x0, y0 + 1);
  const double v11 = img.at(x0 + 1, y0 + 1);
  return v00 * (1 - fx) * (1 - fy) + v10 * fx * (1 - fy) + v01 * (1 - fx) * fy + v11 * fx * fy;
}

// 5x5-window least-squares flow increment between a and (b warped by the
// initial flow), accumulated onto `fu`/`fv`.
void lk_refine(const Plane& a, const Plane& b, std::vector<double>& fu, std::vector<double>& fv) {
  const GridDims dims = a.dims;
  constexpr int kHalf = 2;  // 5x5 window
  constexpr double kMinDet = 1e-9;

  std::vector<double> ix(dims.cells()), iy(dims.cells()), it(dims.cells());
  for (int row = 0; row < dims.height; ++row) {
    for (int col = 0; col < dims.width; ++col) {
      const std::size_t i = dims.index({col, row});
      ix[i] = 0.5 * (a.at(col + 1, row) - a.at(col - 1, row));
      iy[i] = 0.5 * (a.at(col, row + 1) - a.at(col, row - 1));
      it[i] = bilinear(b, col + fu[i], row + fv[i]) - a.v[i];
    }
  }

  std::vector<double> du(dims.cells(), 0.0), dv(dims.cells(), 0.0);
  for (int row = 0; row < dims.height; ++row) {
    for (int col = 0; col < dims.width; ++col) {
      double gxx = 0.0, gxy = 0.0, gyy = 0.0, bx = 0.0, by = 0.0;
      for (int dr = -kHalf; dr <= kHalf; ++dr) {
        for (int dc = -kHalf; dc <= kHalf; ++dc) {
          const Pixel p{col + dc, row + dr};
          if (!dims.contains(p)) continue;
          const std::size_t i = dims.index(p);
          gxx += ix[i] * ix[i];
          gxy += ix[i] * iy[i];
          gyy += iy[i] * iy[i];
          bx -= ix[i] * it[i];
          by -= iy[i] * it[i];
        }
      }
      const double det = gxx * gyy - gxy * gxy;
      if (det > kMinDet) {
        const std::size_t i = dims.index({col, row});
        du[i] = (gyy * bx - gxy * by) / det;
        dv[i] = (gxx * by - gxy * bx) / det;
      }
    }
  }
  for (std::size_t i = 0; i < fu.size(); ++i) {
    fu[i] += du[i];
    fv[i] += dv[i];
  }
}

// Two-level coarse-to-fine flow between a pair of downscaled frames, in
// downscaled pixels per frame.
void pair_flow(const Plane& a, const Plane& b, std::vector<double>& fu, std::vector<double>& fv) {
  const Plane a1 = box_downsample(a, 2);
  const Plane b1 = box_downsample(b, 2);

  std::vector<double> cu(a1.dims.cells(), 0.0), cv(a1.dims.cells(), 0.0);
  lk_refine(a1, b1, cu, cv);

  fu.assign(a.dims.cells(), 0.0);
  fv.assign(a.dims.cells(), 0.0);
  for (int row = 0; row < a.dims.height; ++row) {
    for (int col = 0; col < a.dims.width; ++col) {
      const int c1 = std::min(col / 2, a1.dims.width - 1);
      const int r1 = std::min(row / 2, a1.dims.height - 1);
      const std::size_t i = a.dims.index({col, row});
      fu[i] = 2.0 * cu[a1.dims.index({c1, r1})];
      fv[i] = 2.0 * cv[a1.dims.index({c1, r1})];
    }
  }
  lk_refine(a, b, fu, fv);
}

Plane frame_to_plane(const Frame& frame) {
  return Plane{frame.dims, frame.pixels};
}

}  // namespace

FlowField estimate_flow_classical(std::span<const Frame> frames, int downscale) {
  if (frames.size() < 2) throw std::invalid_argument("need at least 2 frames for flow");
  const GridDims input = frames[0].dims;
  for (const Frame& f : frames) require_same_dims(input, f.dims, "estimate_flow_classical");
  const GridDims out_dims = flow_dims(input, downscale);

  std::vector<Plane> small;
  small.reserve(frames.size());
  for (const Frame& f : frames) small.push_back(box_downsample(frame_to_plane(f), downscale));

  FlowField out = make_flow(out_dims);
  std::vector<double> fu, fv;
  const std::size_t pairs = frames.size() - 1;
  for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
    pair_flow(small[k], small[k + 1], fu, fv);
    for (std::size_t i = 0; i < out.u.size(); ++i) {
      out.u[i] += fu[i];
      out.v[i] += fv[i];
    }
  }
  // Average over pairs; rescale so values are in input pixels per frame.
  const double scale = static_cast<double>(downscale) / static_cast<double>(pairs);
  for (std::size_t i = 0; i < out.u.size(); ++i) {
    out.u[i] *= scale;
    out.v[i] *= scale;
  }
  return out;
}

FlowField estimate_flow_ground_truth(std::span<const FlowField> truth, GridDims frame_dims,
                                     int downscale) {
  if (truth.size() < 2) throw std::invalid_argument("need at least 2 truth fields");
  const GridDims out_dims = flow_dims(frame_dims, downscale);

  FlowField out = make_flow(out_dims);
  const std::size_t pairs = truth.size() - 1;
  for (std::size_t k = 1; k < truth.size(); ++k) {
    const FlowField& t = truth[k];
    require_same_dims(frame_dims, t.dims, "estimate_flow_ground_truth");
    for (int row = 0; row < out_dims.height; ++row) {
      for (int col = 0; col < out_dims.width; ++col) {
        double su = 0.0, sv = 0.0;
        for (int dr = 0; dr < downscale; ++dr) {
          for (int dc = 0; dc < downscale; ++dc) {
            const std::size_t i = t.dims.index({col * downscale + dc, row * downscale + dr});
            su += t.u[i];
            sv += t.v[i];
          }
        }
        const double inv = 1.0 / (downscale * downscale);
        const std::size_t o = out_dims.index({col, row});
        out.u[o] += su * inv;
        out.v[o] += sv * inv;
      }
    }
  }
  for (std::size_t i = 0; i < out.u.size(); ++i) {
    out.u[i] /= static_cast<double>(pairs);
    out.v[i] /= static_cast<double>(pairs);
  }
  return out;
}

DetectionMap detect(const FlowField& flow, double gamma_o) {
  if (gamma_o < 0.0) throw std::invalid_argument("gamma_o must be non-negative");
  DetectionMap map = make_detection_map(flow.dims);
  for (std::size_t i = 0; i < map.z.size(); ++i) {
    map.z[i] = flow.magnitude_at(i) > gamma_o ? 1 : 0;
  }
  return map;
}

FlowEstimator::FlowEstimator(FlowEstimatorKind kind, int window, int downscale)
    : kind_(kind), window_(window), downscale_(downscale) {
  if (window < 2) throw std::invalid_argument("flow estimator window must be >= 2");
  if (downscale < 1) throw std::invalid_argument("flow downscale must be >= 1");
}

void FlowEstimator::push(const Frame& frame) {
  if (kind_ == FlowEstimatorKind::ground_truth) {
    throw std::invalid_argument("ground-truth estimator needs a truth flow per frame");
  }
  frames_.push_back(frame);
  if (static_cast<int>(frames_.size()) > window_) frames_.pop_front();
}

void FlowEstimator::push(const Frame& frame, const FlowField& truth_flow) {
  frames_.push_back(frame);
  truth_.push_back(truth_flow);
  if (static_cast<int>(frames_.size()) > window_) frames_.pop_front();
  if (static_cast<int>(truth_.size()) > window_) truth_.pop_front();
}

bool FlowEstimator::ready() const { return static_cast<int>(frames_.size()) == window_; }

FlowField FlowEstimator::estimate() const {
  if (!ready()) throw std::logic_error("flow estimator buffer not full yet");
  if (kind_ == FlowEstimatorKind::classical) {
    const std::vector<Frame> frames(frames_.begin(), frames_.end());
    return estimate_flow_classical(frames, downscale_);
  }
  if (truth_.size() != frames_.size()) {
    throw std::logic_error("ground-truth estimator missing truth flow");
  }
  const std::vector<FlowField> truth(truth_.begin(), truth_.end());
  return estimate_flow_ground_truth(truth, frames_.back().dims, downscale_);
}

}  // namespace suction
