// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scsa/grid.hpp"

namespace scsa {

/// Real samples on a Grid. Values are finite and there is exactly one per point.
class Signal {
 public:
  Signal(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

  double max() const;
  double min() const;
  double range() const { return max() - min(); }

  /// Same grid, every value shifted by `c`.
  Signal shifted(double c) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// y(x) = sech^2(x - center).
Signal sech2_signal(const Grid& grid, double center);

/// Smooth periodic pulse resembling one arterial pressure beat.
///
/// Rises quickly to `systolic`, decays through a dicrotic dip located at
/// `notch_position` (fraction of the period) followed by a secondary bump, and
/// settles back to `diastolic`. The samples are affinely rescaled so that
/// their extremes are exactly `systolic` and `diastolic`.
Signal synthetic_beat(const Grid& grid, double systolic, double diastolic,
                      double notch_position);

/// Contiguous (modulo M) run of grid indices.
class WindowK {
 public:
  WindowK(std::size_t first, std::size_t count, std::size_t grid_size);

  /// Every index of the grid.
  static WindowK full(std::size_t grid_size) { return {0, grid_size, grid_size}; }

  std::size_t first() const noexcept { return first_; }
  std::size_t count() const noexcept { return count_; }
  std::size_t grid_size() const noexcept { return grid_size_; }

  /// k-th index of the window, wrapping around the seam.
  std::size_t index(std::size_t k) const noexcept { return (first_ + k) % grid_size_; }
  bool contains(std::size_t j) const noexcept;
  std::vector<std::size_t> indices() const;

  friend bool operator==(const WindowK&, const WindowK&) = default;

 private:
  std::size_t first_;
  std::size_t count_;
  std::size_t grid_size_;
};

struct WindowSelection {
  WindowK window;
  /// More than one qualifying run existed; `window` is the longest.
  bool fragmented = false;
};

/// 0.02 * (max y - min y).
double default_margin(const Signal& signal);

/// Longest run of indices with y_j > -lambda + margin.
/// Throws ConfigError if margin <= 0 or if no index qualifies.
WindowSelection window_from_lambda(const Signal& signal, double lambda, double margin);

}  // namespace scsa
