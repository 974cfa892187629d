// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "scsa/eigensolver.hpp"
#include "scsa/signal.hpp"

namespace scsa {

/// Gamma(g + 1) / (2 sqrt(pi) Gamma(g + 3/2)), the classical Weyl constant.
double classical_constant(double gamma);

/// Integral of (1 - eta^2)_+^gamma over the real line; equals 2 pi L_gamma^cl.
double c_gamma(double gamma);

struct ReconstructionParams {
  double h = 0.0;
  double gamma = 0.5;
  double lambda = 0.0;
  WindowK window;
};

struct ReconstructedSignal {
  Grid grid;
  std::vector<double> values;
  ReconstructionParams params;
  /// Number of eigenvalues that entered the sum.
  std::size_t terms_used = 0;

  Signal as_signal() const { return Signal(grid, values); }
};

/// y_{h,gamma}(x, lambda) = -lambda + (h / L_gamma^cl * sum_{lambda_n < lambda} (lambda - lambda_n)^gamma psi_n(x)^2)^(2 / (2 gamma + 1))
///
/// Evaluated on every grid point; the window in `params` only marks where the
/// approximation is expected to converge.
ReconstructedSignal reconstruct(const SpectralDecomposition& decomp, const ReconstructionParams& params);

/// y_h(x, 0) = 4h sum_{lambda_n < 0} (-lambda_n)^(1/2) psi_n(x)^2.
ReconstructedSignal reconstruct_zero(const SpectralDecomposition& decomp);

/// S_gamma(h, lambda) = sum_{lambda_n <= lambda} (lambda - lambda_n)^gamma.
double riesz_mean(const SpectralDecomposition& decomp, double lambda, double gamma);

/// L_gamma^cl * integral (lambda + y)_+^(gamma + 1/2) dx as a periodic Riemann sum.
double classical_riesz_integral(const Signal& signal, double lambda, double gamma);

/// Diagonal of the Riesz-weighted spectral function at grid index j:
/// sum_{lambda_n <= lambda} (lambda - lambda_n)^gamma psi_n(x_j)^2.
double local_riesz_density(const SpectralDecomposition& decomp, double lambda, double gamma, std::size_t j);

/// local_riesz_density at every grid point.
std::vector<double> riesz_density(const SpectralDecomposition& decomp, double lambda, double gamma);

}  // namespace scsa
