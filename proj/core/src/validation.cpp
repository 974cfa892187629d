// SPDX-License-Identifier: Apache-2.0
#include "scsa/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scsa/error.hpp"

namespace scsa {

std::vector<double> poschl_teller_spectrum(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ConfigError("poschl_teller_spectrum: h must be positive");
  }
  const double nu = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 / (h * h)));
  const auto count = static_cast<std::size_t>(std::ceil(nu));
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double k = nu - static_cast<double>(n);
    out[n] = -h * h * k * k;
  }
  return out;
}

AdmissibilityReport check_admissible(const Signal& signal, double lambda, const WindowK& window) {
  const double threshold = 0.05 * signal.range() / signal.grid().length();
  return check_admissible(signal, lambda, window, threshold);
}

AdmissibilityReport check_admissible(const Signal& signal, double lambda, const WindowK& window,
                                     double slope_threshold) {
  if (window.grid_size() != signal.size()) {
    throw ConfigError("check_admissible: window does not belong to this grid");
  }
  AdmissibilityReport r;
  const std::size_t m = signal.size();
  r.left_edge_level = -signal[0];
  r.right_edge_level = -signal[m - 1];
  r.below_boundary = lambda < std::min(r.left_edge_level, r.right_edge_level);

  r.window_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < window.count(); ++k) {
    r.window_min = std::min(r.window_min, signal[window.index(k)]);
  }
  r.inside_window = r.window_min > -lambda;

  r.slope_threshold = slope_threshold;
  r.min_crossing_slope = std::numeric_limits<double>::infinity();
  const double dx = signal.grid().spacing();
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t next = (j + 1) % m;
    const double s0 = signal[j] + lambda;
    const double s1 = signal[next] + lambda;
    const bool changes = (s0 > 0.0) != (s1 > 0.0);
    if (!changes) continue;
    ++r.crossings;
    r.min_crossing_slope = std::min(r.min_crossing_slope, std::abs(signal[next] - signal[j]) / dx);
  }
  r.noncritical = r.crossings == 0 || r.min_crossing_slope > slope_threshold;
  return r;
}

ErrorReport relative_error(const ReconstructedSignal& recon, const Signal& truth,
                           const WindowK& window) {
  if (!(recon.grid == truth.grid()) || window.grid_size() != truth.size()) {
    throw ConfigError("relative_error: reconstruction, truth and window must share one grid");
  }
  double peak = 0.0;
  for (double v : truth.values()) peak = std::max(peak, std::abs(v));
  const double floor = 1e-12 * peak;

  ErrorReport out;
  out.indices = window.indices();
  out.pointwise_rel.reserve(window.count());
  double sq = 0.0;
  for (std::size_t j : out.indices) {
    const double denom = std::max(std::abs(truth[j]), floor);
    double e = std::abs(recon.values[j] - truth[j]);
    e = denom > 0.0 ? e / denom : e;
    out.pointwise_rel.push_back(e);
    out.sup_rel = std::max(out.sup_rel, e);
    sq += e * e;
  }
  out.rms_rel = std::sqrt(sq / static_cast<double>(out.indices.size()));
  out.terms_used = recon.terms_used;
  out.h = recon.params.h;
  out.gamma = recon.params.gamma;
  out.lambda = recon.params.lambda;
  return out;
}

ConvergenceFit convergence_order(std::span<const double> h_values, std::span<const double> errors) {
  if (h_values.size() < 3) {
    throw ConfigError("convergence_order: need at least 3 h values");
  }
  if (h_values.size() != errors.size()) {
    throw ConfigError("convergence_order: h and error lists differ in length");
  }
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (!(h_values[i] > 0.0) || (i > 0 && !(h_values[i] < h_values[i - 1]))) {
      throw ConfigError("convergence_order: h values must be positive and strictly decreasing");
    }
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw ConfigError("convergence_order: error values must be positive, got " +
                        std::to_string(errors[i]) + " at position " + std::to_string(i));
    }
  }
  const auto n = static_cast<double>(h_values.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    mx += std::log(h_values[i]);
    my += std::log(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    const double dx = std::log(h_values[i]) - mx;
    const double dy = std::log(errors[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  ConvergenceFit fit;
  fit.h_values.assign(h_values.begin(), h_values.end());
  fit.errors.assign(errors.begin(), errors.end());
  fit.order = sxy / sxx;
  // A flat error sequence explains nothing.
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 0.0;
  return fit;
}

double weyl_count_residual(const SpectralDecomposition& decomp, const Signal& signal, double lambda) {
  return decomp.h() * static_cast<double>(count_below(decomp, lambda)) -
         classical_riesz_integral(signal, lambda, 0.0);
}

}  // namespace scsa
