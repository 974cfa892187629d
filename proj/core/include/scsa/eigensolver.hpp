// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scsa/discretization.hpp"
#include "scsa/grid.hpp"
#include "scsa/signal.hpp"

namespace scsa {

/// Eigenvalues in ascending order together with Euclidean-orthonormal
/// eigenvectors for (a prefix of) them. Vector k is stored contiguously.
struct Eigensystem {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> vectors;  // vector_count() * n entries

  std::size_t vector_count() const noexcept { return n == 0 ? 0 : vectors.size() / n; }
  std::span<const double> vector(std::size_t k) const noexcept {
    return {vectors.data() + k * n, n};
  }
};

struct EigenOptions {
  /// When set, eigenvectors are only computed for eigenvalues <= this value
  /// (tridiagonal inverse iteration plus back-transformation). When unset the
  /// full basis is produced by implicit QL on the accumulated transform.
  std::optional<double> vectors_up_to;
  int max_ql_iterations = 60;
};

/// Householder tridiagonalization + implicit-shift QL. Throws ConfigError on
/// asymmetric input and InvariantError if QL fails to converge.
Eigensystem eigendecompose(const SymmetricMatrix& matrix, const EigenOptions& options = {});

/// Spectrum of the discretized operator -h^2 d^2/dx^2 - y for one h.
///
/// Eigenfunctions are normalized in the discrete L^2 sense:
/// sum_j psi_n(x_j)^2 * spacing = 1.
class SpectralDecomposition {
 public:
  SpectralDecomposition(Grid grid, double h, Eigensystem system);

  const Grid& grid() const noexcept { return grid_; }
  double h() const noexcept { return h_; }
  std::span<const double> eigenvalues() const noexcept { return values_; }
  double eigenvalue(std::size_t n) const noexcept { return values_[n]; }

  /// Number of eigenfunctions available (eigenvalues 0 .. count-1).
  std::size_t eigenfunction_count() const noexcept { return function_count_; }
  std::span<const double> eigenfunction(std::size_t n) const noexcept {
    return {functions_.data() + n * grid_.size(), grid_.size()};
  }

  double spectral_radius() const noexcept { return spectral_radius_; }
  /// 1e-10 * spectral radius; eigenvalues this close to a cutoff count as ties.
  double tie_epsilon() const noexcept { return tie_epsilon_; }

  /// Number of eigenvalues < -tie_epsilon.
  std::size_t negative_count() const noexcept { return negative_count_; }

  /// Throws ConfigError unless eigenfunctions exist for every eigenvalue <= lambda.
  void require_functions_up_to(double lambda) const;

 private:
  Grid grid_;
  double h_;
  std::vector<double> values_;
  std::vector<double> functions_;
  std::size_t function_count_;
  double spectral_radius_;
  double tie_epsilon_;
  std::size_t negative_count_;
};

struct DecomposeOptions {
  DerivativeScheme scheme = DerivativeScheme::kFourier;
  /// Compute eigenfunctions only for eigenvalues <= this level.
  std::optional<double> functions_up_to;
  std::size_t max_dimension = kDefaultMaxDimension;
};

SpectralDecomposition decompose(const Signal& signal, double h, const DecomposeOptions& options = {});

/// #{n : lambda_n < lambda - tie_epsilon}.
std::size_t count_below(const SpectralDecomposition& decomp, double lambda);

struct DecompositionDiagnostics {
  /// max |<psi_m, psi_n>_{L^2} - delta_mn|.
  double gram_deviation = 0.0;
  /// max_n ||H psi_n - lambda_n psi_n|| / ||psi_n||.
  double max_residual = 0.0;
  double spectral_radius = 0.0;
  /// |sum lambda_n - trace H| / max(|trace H|, spectral radius); NaN for partial decompositions.
  double trace_mismatch = 0.0;

  bool orthonormal(double tolerance = 1e-8) const noexcept { return gram_deviation <= tolerance; }
  bool residual_ok(double relative = 1e-7) const noexcept {
    return max_residual <= relative * spectral_radius;
  }
};

/// Measures the numerical hygiene of `decomp` against the operator it came from.
DecompositionDiagnostics diagnose(const SpectralDecomposition& decomp, const SymmetricMatrix& hamiltonian);

}  // namespace scsa
