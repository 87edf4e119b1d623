#include "suction/region_extraction.hpp"

#include <stdexcept>
#include <vector>

namespace suction {

namespace {

const int kOff8c[8] = {0, 0, -1, 1, -1, 1, -1, 1};
const int kOff8r[8] = {-1, 1, 0, 0, -1, -1, 1, 1};

int neighbor_count(int connectivity) {
  if (connectivity != 4 && connectivity != 8) {
    throw std::invalid_argument("connectivity must be 4 or 8");
  }
  return connectivity;
}

// Flood fill from seed; labels visited cells and returns the component as
// (size, min (row,col) pixel).
struct Component {
  std::size_t size = 0;
  Pixel min_pixel{0, 0};
  std::vector<std::size_t> cells;
};

Component flood(const BloodMask& mask, std::vector<std::uint8_t>& seen, std::size_t seed,
                int connectivity) {
  const GridDims dims = mask.dims;
  Component comp;
  std::vector<std::size_t> stack{seed};
  seen[seed] = 1;
  comp.min_pixel = dims.pixel(seed);
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    comp.cells.push_back(i);
    ++comp.size;
    const Pixel p = dims.pixel(i);
    if (p.row < comp.min_pixel.row ||
        (p.row == comp.min_pixel.row && p.col < comp.min_pixel.col)) {
      comp.min_pixel = p;
    }
    for (int k = 0; k < connectivity; ++k) {
      const Pixel q{p.col + kOff8c[k], p.row + kOff8r[k]};
      if (!dims.contains(q)) continue;
      const std::size_t j = dims.index(q);
      if (seen[j] || !mask.bits[j]) continue;
      seen[j] = 1;
      stack.push_back(j);
    }
  }
  return comp;
}

}  // namespace

BloodMask threshold_mask(const PosteriorMap& posterior) {
  BloodMask mask = make_mask(posterior.dims);
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    mask.bits[i] = posterior.prob[i] > 0.5 ? 1 : 0;
  }
  return mask;
}

BloodMask dilate3x3(const BloodMask& mask) {
  const GridDims dims = mask.dims;
  BloodMask out = make_mask(dims);
  for (int row = 0; row < dims.height; ++row) {
    for (int col = 0; col < dims.width; ++col) {
      bool any = false;
      for (int dr = -1; dr <= 1 && !any; ++dr) {
        for (int dc = -1; dc <= 1 && !any; ++dc) {
          const Pixel q{col + dc, row + dr};
          if (dims.contains(q) && mask.bits[dims.index(q)]) any = true;
        }
      }
      out.bits[dims.index({col, row})] = any ? 1 : 0;
    }
  }
  return out;
}

BloodMask erode3x3(const BloodMask& mask) {
  const GridDims dims = mask.dims;
  BloodMask out = make_mask(dims);
  for (int row = 0; row < dims.height; ++row) {
    for (int col = 0; col < dims.width; ++col) {
      bool all = true;
      for (int dr = -1; dr <= 1 && all; ++dr) {
        for (int dc = -1; dc <= 1 && all; ++dc) {
          const Pixel q{col + dc, row + dr};
          if (!dims.contains(q) || !mask.bits[dims.index(q)]) all = false;
        }
      }
      out.bits[dims.index({col, row})] = all ? 1 : 0;
    }
  }
  return out;
}

BloodMask denoise(const BloodMask& mask) { return erode3x3(dilate3x3(mask)); }

std::optional<BloodMask> largest_component(const BloodMask& mask, int gamma_B, int connectivity) {
  const int nn = neighbor_count(connectivity);
  std::vector<std::uint8_t> seen(mask.bits.size(), 0);

  Component best;
  bool have = false;
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (!mask.bits[i] || seen[i]) continue;
    Component comp = flood(mask, seen, i, nn);
    const bool better =
        !have || comp.size > best.size ||
        (comp.size == best.size &&
         (comp.min_pixel.row < best.min_pixel.row ||
          (comp.min_pixel.row == best.min_pixel.row && comp.min_pixel.col < best.min_pixel.col)));
    if (better) {
      best = std::move(comp);
      have = true;
    }
  }
  if (!have || best.size <= static_cast<std::size_t>(gamma_B)) return std::nullopt;

  BloodMask out = make_mask(mask.dims);
  for (std::size_t i : best.cells) out.bits[i] = 1;
  return out;
}

int count_components(const BloodMask& mask, int connectivity) {
  const int nn = neighbor_count(connectivity);
  std::vector<std::uint8_t> seen(mask.bits.size(), 0);
  int count = 0;
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (!mask.bits[i] || seen[i]) continue;
    flood(mask, seen, i, nn);
    ++count;
  }
  return count;
}

}  // namespace suction
