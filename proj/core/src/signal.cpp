// SPDX-License-Identifier: Apache-2.0
#include "scsa/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scsa/error.hpp"

namespace scsa {

Signal::Signal(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DataError("signal: expected " + std::to_string(grid_.size()) + " samples, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw DataError("signal: non-finite sample at index " + std::to_string(j));
    }
  }
}

double Signal::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Signal::min() const { return *std::min_element(values_.begin(), values_.end()); }

Signal Signal::shifted(double c) const {
  std::vector<double> out(values_);
  for (double& v : out) v += c;
  return Signal(grid_, std::move(out));
}

Signal sech2_signal(const Grid& grid, double center) {
  if (!(center > grid.a() && center < grid.b())) {
    throw ConfigError("sech2_signal: center must lie inside (a, b)");
  }
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double s = 1.0 / std::cosh(grid.point(j) - center);
    values[j] = s * s;
  }
  return Signal(grid, std::move(values));
}

namespace {

// Periodic von Mises bump on the unit period; `skew` warps the phase so the
// leading flank is steeper than the trailing one (|skew| < 1 keeps it monotone).
double periodic_bump(double t, double center, double concentration, double skew) {
  double phase = 2.0 * std::numbers::pi * (t - center);
  phase += skew * std::sin(phase);
  return std::exp(concentration * (std::cos(phase) - 1.0));
}

constexpr double kSystolicCenter = 0.2;
constexpr double kSystolicConcentration = 6.0;
constexpr double kSystolicSkew = -0.5;
constexpr double kDicroticOffset = 0.08;
constexpr double kDicroticConcentration = 20.0;
constexpr double kDicroticAmplitude = 0.3;

}  // namespace

Signal synthetic_beat(const Grid& grid, double systolic, double diastolic, double notch_position) {
  if (!(diastolic > 0.0) || !(systolic > diastolic)) {
    throw ConfigError("synthetic_beat: need systolic > diastolic > 0");
  }
  if (!(notch_position > 0.0 && notch_position < 1.0)) {
    throw ConfigError("synthetic_beat: notch_position must lie in (0, 1)");
  }
  std::vector<double> shape(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = (grid.point(j) - grid.a()) / grid.length();
    shape[j] = periodic_bump(t, kSystolicCenter, kSystolicConcentration, kSystolicSkew) +
               kDicroticAmplitude *
                   periodic_bump(t, notch_position + kDicroticOffset, kDicroticConcentration, 0.0);
  }
  const auto [lo, hi] = std::minmax_element(shape.begin(), shape.end());
  const double base = *lo;
  const double span = *hi - *lo;
  for (double& v : shape) v = diastolic + (systolic - diastolic) * (v - base) / span;
  return Signal(grid, std::move(shape));
}

WindowK::WindowK(std::size_t first, std::size_t count, std::size_t grid_size)
    : first_(first), count_(count), grid_size_(grid_size) {
  if (grid_size == 0 || count == 0 || count > grid_size || first >= grid_size) {
    throw ConfigError("window: need 0 < count <= M and first < M");
  }
}

bool WindowK::contains(std::size_t j) const noexcept {
  if (j >= grid_size_) return false;
  const std::size_t offset = (j + grid_size_ - first_) % grid_size_;
  return offset < count_;
}

std::vector<std::size_t> WindowK::indices() const {
  std::vector<std::size_t> out(count_);
  for (std::size_t k = 0; k < count_; ++k) out[k] = index(k);
  return out;
}

double default_margin(const Signal& signal) { return 0.02 * signal.range(); }

WindowSelection window_from_lambda(const Signal& signal, double lambda, double margin) {
  if (!(margin > 0.0)) {
    throw ConfigError("window_from_lambda: margin must be > 0");
  }
  const std::size_t m = signal.size();
  const double level = -lambda + margin;
  auto qualifies = [&](std::size_t j) { return signal[j] > level; };

  std::size_t start = m;
  for (std::size_t j = 0; j < m; ++j) {
    if (!qualifies(j)) {
      start = j;
      break;
    }
  }
  if (start == m) return {WindowK::full(m), false};

  // Walk once around the circle starting just after a rejected index so that
  // every run is seen whole, including one that wraps across the seam.
  std::size_t best_first = 0;
  std::size_t best_count = 0;
  std::size_t runs = 0;
  std::size_t run_first = 0;
  std::size_t run_count = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    const std::size_t j = (start + k) % m;
    if (qualifies(j)) {
      if (run_count == 0) run_first = j;
      ++run_count;
      continue;
    }
    if (run_count > 0) {
      ++runs;
      if (run_count > best_count || (run_count == best_count && run_first < best_first)) {
        best_first = run_first;
        best_count = run_count;
      }
      run_count = 0;
    }
  }
  if (runs == 0) {
    throw ConfigError("window_from_lambda: lambda too low for this signal (no sample exceeds " +
                      std::to_string(level) + ")");
  }
  return {WindowK(best_first, best_count, m), runs > 1};
}

}  // namespace scsa
