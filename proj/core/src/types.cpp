#include "suction/types.hpp"

#include <algorithm>
#include <cmath>

namespace suction {

double FlowField::magnitude_at(std::size_t idx) const {
  return std::hypot(u[idx], v[idx]);
}

std::size_t BloodMask::count() const {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

}  // namespace suction
