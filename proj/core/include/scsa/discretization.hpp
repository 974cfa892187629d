// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scsa/grid.hpp"
#include "scsa/signal.hpp"

namespace scsa {

/// Dense symmetric matrix, row-major. Writes go through set(), which updates
/// both (i, j) and (j, i), so the stored entries are exactly symmetric.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n);

  /// Adopts a full row-major n*n array. Throws ConfigError if any
  /// |a_ij - a_ji| exceeds `tolerance`; the stored matrix is the symmetric part.
  static SymmetricMatrix from_full(std::size_t n, std::span<const double> entries,
                                   double tolerance = 1e-12);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }
  std::span<const double> data() const noexcept { return data_; }

  /// y = A x.
  std::vector<double> apply(std::span<const double> x) const;
  double max_abs() const noexcept;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

enum class DerivativeScheme { kFourier, kFiniteDifference };

/// Largest M accepted by the dense discretization.
inline constexpr std::size_t kDefaultMaxDimension = 4096;

/// Periodic pseudo-spectral second-derivative matrix on `grid` (even M).
SymmetricMatrix fourier_d2(const Grid& grid);

/// Periodic three-point stencil (1, -2, 1) / spacing^2.
SymmetricMatrix finite_difference_d2(const Grid& grid);

SymmetricMatrix second_derivative(const Grid& grid, DerivativeScheme scheme);

/// True when h is small compared to the grid spacing (h < 2 * spacing); the
/// discretization then under-resolves the eigenfunctions.
bool h_under_resolved(const Grid& grid, double h) noexcept;

/// -h^2 * d2 - diag(y).
SymmetricMatrix hamiltonian(const Signal& signal, double h, const SymmetricMatrix& d2);

}  // namespace scsa
