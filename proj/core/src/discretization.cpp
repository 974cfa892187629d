// SPDX-License-Identifier: Apache-2.0
#include "scsa/discretization.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kernels.hpp"
#include "scsa/error.hpp"

namespace scsa {

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

SymmetricMatrix SymmetricMatrix::from_full(std::size_t n, std::span<const double> entries,
                                           double tolerance) {
  if (entries.size() != n * n) {
    throw ConfigError("symmetric matrix: expected " + std::to_string(n * n) + " entries");
  }
  SymmetricMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double upper = entries[i * n + j];
      const double lower = entries[j * n + i];
      if (std::abs(upper - lower) > tolerance) {
        throw ConfigError("symmetric matrix: entries (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") and its transpose differ by " +
                          std::to_string(std::abs(upper - lower)));
      }
      out.set(i, j, 0.5 * (upper + lower));
    }
  }
  return out;
}

std::vector<double> SymmetricMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    y[i] = detail::dot(data_.data() + i * n_, x.data(), n_);
  }
  return y;
}

double SymmetricMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Fills a circulant symmetric matrix from its first row, which must satisfy
// row[d] == row[M - d].
SymmetricMatrix circulant(std::span<const double> first_row) {
  const std::size_t m = first_row.size();
  SymmetricMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) out.set(i, j, first_row[j - i]);
  }
  return out;
}

}  // namespace

SymmetricMatrix fourier_d2(const Grid& grid) {
  const std::size_t m = grid.size();
  if (m % 2 != 0) throw ConfigError("fourier_d2: M must be even");
  const double pi = std::numbers::pi;
  const double theta = 2.0 * pi / static_cast<double>(m);
  const double scale = std::pow(2.0 * pi / grid.length(), 2);

  std::vector<double> row(m);
  row[0] = scale * (-pi * pi / (3.0 * theta * theta) - 1.0 / 6.0);
  for (std::size_t d = 1; d < m; ++d) {
    const std::size_t k = std::min(d, m - d);
    const double s = std::sin(static_cast<double>(k) * theta / 2.0);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    row[d] = scale * (-sign / (2.0 * s * s));
  }
  return circulant(row);
}

SymmetricMatrix finite_difference_d2(const Grid& grid) {
  const std::size_t m = grid.size();
  const double inv = 1.0 / (grid.spacing() * grid.spacing());
  std::vector<double> row(m, 0.0);
  row[0] = -2.0 * inv;
  row[1] = inv;
  row[m - 1] = inv;
  return circulant(row);
}

SymmetricMatrix second_derivative(const Grid& grid, DerivativeScheme scheme) {
  switch (scheme) {
    case DerivativeScheme::kFourier:
      return fourier_d2(grid);
    case DerivativeScheme::kFiniteDifference:
      return finite_difference_d2(grid);
  }
  throw ConfigError("second_derivative: unknown scheme");
}

bool h_under_resolved(const Grid& grid, double h) noexcept { return h < 2.0 * grid.spacing(); }

SymmetricMatrix hamiltonian(const Signal& signal, double h, const SymmetricMatrix& d2) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ConfigError("hamiltonian: h must be a positive finite number");
  }
  const std::size_t m = signal.size();
  if (d2.size() != m) {
    throw ConfigError("hamiltonian: derivative matrix is " + std::to_string(d2.size()) +
                      "x" + std::to_string(d2.size()) + " but the signal has " +
                      std::to_string(m) + " samples");
  }
  const double h2 = h * h;
  SymmetricMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) out.set(i, j, -h2 * d2(i, j));
    out.set(i, i, -h2 * d2(i, i) - signal[i]);
  }
  return out;
}

}  // namespace scsa
