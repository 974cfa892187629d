// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace scsa {

/// Uniform periodic sampling of [a, b).
///
/// Point j (0-based) sits at a + j * spacing with spacing = (b - a) / M, so
/// the point after the last one coincides with a. Only even M >= 8 is
/// accepted because the pseudo-spectral second-derivative matrix requires it.
class Grid {
 public:
  Grid(double a, double b, std::size_t m);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t size() const noexcept { return m_; }
  double spacing() const noexcept { return spacing_; }
  double length() const noexcept { return b_ - a_; }

  double point(std::size_t j) const noexcept {
    return a_ + static_cast<double>(j) * spacing_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t m_;
  double spacing_;
};

Grid make_grid(double a, double b, std::size_t m);

}  // namespace scsa
