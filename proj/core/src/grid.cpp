// SPDX-License-Identifier: Apache-2.0
#include "scsa/grid.hpp"

#include <cmath>
#include <string>

#include "scsa/error.hpp"

namespace scsa {

Grid::Grid(double a, double b, std::size_t m) : a_(a), b_(b), m_(m), spacing_(0.0) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ConfigError("grid: need finite a < b, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b));
  }
  if (m < 8) {
    throw ConfigError("grid: M must be >= 8, got " + std::to_string(m));
  }
  if (m % 2 != 0) {
    throw ConfigError("grid: M must be even, got " + std::to_string(m));
  }
  spacing_ = (b - a) / static_cast<double>(m);
}

Grid make_grid(double a, double b, std::size_t m) { return Grid(a, b, m); }

}  // namespace scsa
