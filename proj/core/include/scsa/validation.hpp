// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scsa/eigensolver.hpp"
#include "scsa/reconstruction.hpp"
#include "scsa/signal.hpp"

namespace scsa {

/// Whole-line bound states of -h^2 d^2/dx^2 - sech^2(x), most negative first:
/// -h^2 (nu - n)^2 for n = 0 .. ceil(nu) - 1 with nu (nu + 1) = 1 / h^2.
std::vector<double> poschl_teller_spectrum(double h);

/// Evidence for the three conditions that make (K, lambda) admissible.
struct AdmissibilityReport {
  /// lambda < min(-y(left edge), -y(right edge)).
  bool below_boundary = false;
  double left_edge_level = 0.0;   // -y at the first sample
  double right_edge_level = 0.0;  // -y at the last sample

  /// y_j > -lambda on every window index.
  bool inside_window = false;
  double window_min = 0.0;

  /// |y'| exceeds the slope threshold at every sign change of y + lambda.
  bool noncritical = false;
  double min_crossing_slope = 0.0;
  double slope_threshold = 0.0;
  std::size_t crossings = 0;

  bool admissible() const noexcept { return below_boundary && inside_window && noncritical; }
};

/// Default slope threshold: 0.05 * range(y) / (b - a).
AdmissibilityReport check_admissible(const Signal& signal, double lambda, const WindowK& window);
AdmissibilityReport check_admissible(const Signal& signal, double lambda, const WindowK& window,
                                     double slope_threshold);

struct ErrorReport {
  std::vector<std::size_t> indices;  // window indices, in window order
  std::vector<double> pointwise_rel;
  double sup_rel = 0.0;
  double rms_rel = 0.0;
  std::size_t terms_used = 0;
  double h = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
};

/// |recon - truth| / max(|truth|, 1e-12 * max|truth|) on `window`.
ErrorReport relative_error(const ReconstructedSignal& recon, const Signal& truth, const WindowK& window);

struct ConvergenceFit {
  std::vector<double> h_values;
  std::vector<double> errors;
  double order = 0.0;
  double r_squared = 0.0;
};

/// Least-squares slope of log(error) against log(h). Needs >= 3 strictly
/// decreasing h values and positive errors.
ConvergenceFit convergence_order(std::span<const double> h_values, std::span<const double> errors);

/// h * N_{h,lambda} - L_0^cl * integral (lambda + y)_+^(1/2) dx.
double weyl_count_residual(const SpectralDecomposition& decomp, const Signal& signal, double lambda);

}  // namespace scsa
