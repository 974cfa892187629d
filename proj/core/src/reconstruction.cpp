// SPDX-License-Identifier: Apache-2.0
#include "scsa/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scsa/error.hpp"

namespace scsa {
namespace {

void require_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ConfigError("gamma must be a finite number >= 0, got " + std::to_string(gamma));
  }
}

// Weights (lambda - lambda_n)^gamma for the first `count` eigenvalues.
std::vector<double> riesz_weights(const SpectralDecomposition& decomp, double lambda, double gamma,
                                  std::size_t count) {
  std::vector<double> w(count);
  for (std::size_t n = 0; n < count; ++n) {
    w[n] = std::pow(std::max(0.0, lambda - decomp.eigenvalue(n)), gamma);
  }
  return w;
}

// sum_n weights[n] * psi_n(x_j)^2 for every j.
std::vector<double> weighted_density(const SpectralDecomposition& decomp,
                                     const std::vector<double>& weights) {
  const std::size_t m = decomp.grid().size();
  std::vector<double> out(m, 0.0);
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const auto f = decomp.eigenfunction(n);
    const double w = weights[n];
    for (std::size_t j = 0; j < m; ++j) out[j] += w * f[j] * f[j];
  }
  return out;
}

// Eigenvalues <= lambda (up to the tie tolerance).
std::size_t count_at_or_below(const SpectralDecomposition& decomp, double lambda) {
  const double cut = lambda + decomp.tie_epsilon();
  const auto values = decomp.eigenvalues();
  return static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), cut) -
                                  values.begin());
}

}  // namespace

double classical_constant(double gamma) {
  require_gamma(gamma);
  const double two_sqrt_pi = 2.0 / std::numbers::inv_sqrtpi;
  if (gamma <= 100.0) {
    return std::tgamma(gamma + 1.0) / (two_sqrt_pi * std::tgamma(gamma + 1.5));
  }
  return std::exp(std::lgamma(gamma + 1.0) - std::lgamma(gamma + 1.5)) / two_sqrt_pi;
}

double c_gamma(double gamma) { return 2.0 * std::numbers::pi * classical_constant(gamma); }

ReconstructedSignal reconstruct(const SpectralDecomposition& decomp,
                                const ReconstructionParams& params) {
  require_gamma(params.gamma);
  if (params.h != decomp.h()) {
    throw ConfigError("reconstruct: params.h = " + std::to_string(params.h) +
                      " does not match the decomposition's h = " + std::to_string(decomp.h()));
  }
  if (params.window.grid_size() != decomp.grid().size()) {
    throw ConfigError("reconstruct: window does not belong to this grid");
  }
  const std::size_t terms = count_below(decomp, params.lambda);
  if (terms > 0) decomp.require_functions_up_to(decomp.eigenvalue(terms - 1));

  const double prefactor = params.h / classical_constant(params.gamma);
  const double exponent = 2.0 / (2.0 * params.gamma + 1.0);
  std::vector<double> values = weighted_density(decomp, riesz_weights(decomp, params.lambda, params.gamma, terms));
  for (double& v : values) v = -params.lambda + std::pow(prefactor * v, exponent);
  return {decomp.grid(), std::move(values), params, terms};
}

ReconstructedSignal reconstruct_zero(const SpectralDecomposition& decomp) {
  const std::size_t terms = count_below(decomp, 0.0);
  if (terms > 0) decomp.require_functions_up_to(decomp.eigenvalue(terms - 1));
  std::vector<double> weights(terms);
  for (std::size_t n = 0; n < terms; ++n) weights[n] = std::sqrt(-decomp.eigenvalue(n));
  std::vector<double> values = weighted_density(decomp, weights);
  const double four_h = 4.0 * decomp.h();
  for (double& v : values) v *= four_h;
  ReconstructionParams params{decomp.h(), 0.5, 0.0, WindowK::full(decomp.grid().size())};
  return {decomp.grid(), std::move(values), params, terms};
}

double riesz_mean(const SpectralDecomposition& decomp, double lambda, double gamma) {
  require_gamma(gamma);
  const std::size_t count = count_at_or_below(decomp, lambda);
  double sum = 0.0;
  for (double w : riesz_weights(decomp, lambda, gamma, count)) sum += w;
  return sum;
}

double classical_riesz_integral(const Signal& signal, double lambda, double gamma) {
  require_gamma(gamma);
  double sum = 0.0;
  for (double y : signal.values()) {
    const double level = lambda + y;
    if (level > 0.0) sum += std::pow(level, gamma + 0.5);
  }
  return classical_constant(gamma) * sum * signal.grid().spacing();
}

double local_riesz_density(const SpectralDecomposition& decomp, double lambda, double gamma,
                           std::size_t j) {
  require_gamma(gamma);
  if (j >= decomp.grid().size()) {
    throw ConfigError("local_riesz_density: index " + std::to_string(j) + " is off the grid");
  }
  const std::size_t count = count_at_or_below(decomp, lambda);
  if (count > 0) decomp.require_functions_up_to(decomp.eigenvalue(count - 1));
  const std::vector<double> w = riesz_weights(decomp, lambda, gamma, count);
  double sum = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    const double f = decomp.eigenfunction(n)[j];
    sum += w[n] * f * f;
  }
  return sum;
}

std::vector<double> riesz_density(const SpectralDecomposition& decomp, double lambda, double gamma) {
  require_gamma(gamma);
  const std::size_t count = count_at_or_below(decomp, lambda);
  if (count > 0) decomp.require_functions_up_to(decomp.eigenvalue(count - 1));
  return weighted_density(decomp, riesz_weights(decomp, lambda, gamma, count));
}

}  // namespace scsa
