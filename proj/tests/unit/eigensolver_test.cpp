// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scsa/eigensolver.hpp"
#include "scsa/error.hpp"

namespace scsa {
namespace {

SymmetricMatrix random_symmetric(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) a.set(i, j, normal(rng));
  }
  return a;
}

// max |A - Q diag(w) Q^T|
double reconstruction_error(const SymmetricMatrix& a, const Eigensystem& sys) {
  const std::size_t n = a.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += sys.vector(k)[i] * sys.values[k] * sys.vector(k)[j];
      worst = std::max(worst, std::abs(acc - a(i, j)));
    }
  }
  return worst;
}

double orthonormality_error(const Eigensystem& sys) {
  double worst = 0.0;
  for (std::size_t a = 0; a < sys.vector_count(); ++a) {
    for (std::size_t b = 0; b < sys.vector_count(); ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < sys.n; ++i) dot += sys.vector(a)[i] * sys.vector(b)[i];
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

TEST(Eigendecompose, ExchangeMatrix) {
  SymmetricMatrix a(2);
  a.set(0, 1, 1.0);
  const Eigensystem sys = eigendecompose(a);
  EXPECT_NEAR(sys.values[0], -1.0, 1e-15);
  EXPECT_NEAR(sys.values[1], 1.0, 1e-15);
  EXPECT_NEAR(std::abs(sys.vector(0)[0]), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(sys.vector(0)[0], -sys.vector(0)[1], 1e-15);
}

TEST(Eigendecompose, DiagonalMatrixSortsAndPermutes) {
  SymmetricMatrix a(3);
  a.set(0, 0, 3.0);
  a.set(1, 1, 1.0);
  a.set(2, 2, 2.0);
  const Eigensystem sys = eigendecompose(a);
  EXPECT_EQ(sys.values, (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(std::abs(sys.vector(0)[1]), 1.0);
  EXPECT_EQ(std::abs(sys.vector(1)[2]), 1.0);
  EXPECT_EQ(std::abs(sys.vector(2)[0]), 1.0);
}

TEST(Eigendecompose, FreePeriodicLaplacianModes) {
  // -h^2 D2 with h = 1 on [0, 2 pi): eigenvalues k^2, doubly degenerate except
  // k = 0 and the Nyquist mode k = 8.
  const Grid g(0.0, 2.0 * std::numbers::pi, 16);
  const Signal zero(g, std::vector<double>(16, 0.0));
  const Eigensystem sys = eigendecompose(hamiltonian(zero, 1.0, fourier_d2(g)));
  std::vector<double> expected{0.0};
  for (int k = 1; k < 8; ++k) expected.insert(expected.end(), {double(k * k), double(k * k)});
  expected.push_back(64.0);
  ASSERT_EQ(sys.values.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(sys.values[i], expected[i], 1e-10);
  EXPECT_LE(orthonormality_error(sys), 1e-12);
}

TEST(Eigendecompose, RandomMatricesReconstruct) {
  for (std::size_t n : {1u, 2u, 3u, 5u, 17u, 64u}) {
    const SymmetricMatrix a = random_symmetric(n, 100 + static_cast<std::uint32_t>(n));
    const Eigensystem sys = eigendecompose(a);
    ASSERT_EQ(sys.vector_count(), n);
    EXPECT_TRUE(std::is_sorted(sys.values.begin(), sys.values.end()));
    EXPECT_LE(orthonormality_error(sys), 1e-12) << n;
    EXPECT_LE(reconstruction_error(a, sys), 1e-9 * a.max_abs()) << n;
  }
}

TEST(Eigendecompose, TridiagonalAndZeroInputs) {
  SymmetricMatrix zero(6);
  const Eigensystem z = eigendecompose(zero);
  for (double v : z.values) EXPECT_EQ(v, 0.0);
  EXPECT_LE(orthonormality_error(z), 1e-15);

  SymmetricMatrix tri(40);
  for (std::size_t i = 0; i < 40; ++i) {
    tri.set(i, i, 2.0);
    if (i + 1 < 40) tri.set(i, i + 1, -1.0);
  }
  const Eigensystem sys = eigendecompose(tri);
  for (std::size_t k = 0; k < 40; ++k) {
    const double expected = 2.0 - 2.0 * std::cos(std::numbers::pi * double(k + 1) / 41.0);
    EXPECT_NEAR(sys.values[k], expected, 1e-13);
  }
}

TEST(Eigendecompose, PartialVectorsAgreeWithFullPath) {
  const Grid g(0.0, 10.0, 256);
  const Signal y = sech2_signal(g, 5.0);
  const SymmetricMatrix h = hamiltonian(y, 0.05, fourier_d2(g));
  const Eigensystem full = eigendecompose(h);
  const Eigensystem part = eigendecompose(h, {0.0});
  ASSERT_EQ(full.values.size(), part.values.size());
  for (std::size_t i = 0; i < full.values.size(); ++i) {
    EXPECT_NEAR(part.values[i], full.values[i], 1e-11 * std::abs(full.values.back()));
  }
  const auto negative = static_cast<std::size_t>(
      std::count_if(full.values.begin(), full.values.end(), [](double v) { return v <= 0.0; }));
  ASSERT_EQ(part.vector_count(), negative);
  EXPECT_LE(orthonormality_error(part), 1e-12);
  for (std::size_t k = 0; k < negative; ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) dot += full.vector(k)[i] * part.vector(k)[i];
    EXPECT_NEAR(std::abs(dot), 1.0, 1e-10) << k;
  }
}

TEST(Eigendecompose, PartialVectorsHandleDegenerateClusters) {
  // The free operator has exactly degenerate pairs; inverse iteration must
  // still return an orthonormal basis of each eigenspace.
  const Grid g(0.0, 10.0, 64);
  const Signal zero(g, std::vector<double>(64, 0.0));
  const SymmetricMatrix h = hamiltonian(zero, 0.5, fourier_d2(g));
  const Eigensystem part = eigendecompose(h, {5.0});
  ASSERT_GE(part.vector_count(), 5u);
  EXPECT_LE(orthonormality_error(part), 1e-10);
  for (std::size_t k = 0; k < part.vector_count(); ++k) {
    const auto hv = h.apply(part.vector(k));
    for (std::size_t i = 0; i < 64; ++i) {
      EXPECT_NEAR(hv[i], part.values[k] * part.vector(k)[i], 1e-9 * h.max_abs());
    }
  }
}

TEST(Decompose, PoschlTellerCountsAndGroundState) {
  const Grid g(0.0, 10.0, 1024);
  const Signal y = sech2_signal(g, 5.0);
  const SpectralDecomposition d = decompose(y, 0.1, {.functions_up_to = 0.0});
  EXPECT_EQ(d.negative_count(), 10u);
  const SpectralDecomposition coarse = decompose(y, 1.0, {.functions_up_to = 0.0});
  EXPECT_EQ(coarse.negative_count(), 1u);
  // At h = 1 the ground state decays slowly, so compare on a wide interval.
  const Grid wide(0.0, 40.0, 1024);
  const SpectralDecomposition whole = decompose(sech2_signal(wide, 20.0), 1.0, {.functions_up_to = 0.0});
  const double nu = (std::sqrt(5.0) - 1.0) / 2.0;
  EXPECT_NEAR(whole.eigenvalue(0), -nu * nu, 1e-6);
  EXPECT_NEAR(whole.eigenvalue(0), -0.38197, 1e-5);
  const Signal zero(g, std::vector<double>(1024, 0.0));
  EXPECT_EQ(decompose(zero, 0.1, {.functions_up_to = 0.0}).negative_count(), 0u);
}

TEST(Decompose, L2NormalizationAndHygiene) {
  const Grid g(0.0, 10.0, 256);
  const Signal y = sech2_signal(g, 5.0);
  const SymmetricMatrix h = hamiltonian(y, 0.1, fourier_d2(g));
  const SpectralDecomposition d = decompose(y, 0.1);
  ASSERT_EQ(d.eigenfunction_count(), 256u);
  const DecompositionDiagnostics diag = diagnose(d, h);
  EXPECT_LE(diag.gram_deviation, 1e-8);
  EXPECT_TRUE(diag.residual_ok());
  EXPECT_LE(diag.trace_mismatch, 1e-8);
  // Discrete L^2 norm 1 means sum psi^2 = 1 / spacing.
  double s = 0.0;
  for (double v : d.eigenfunction(0)) s += v * v;
  EXPECT_NEAR(s * g.spacing(), 1.0, 1e-12);
}

TEST(Decompose, ShiftCovariance) {
  const Grid g(0.0, 10.0, 256);
  const Signal y = sech2_signal(g, 5.0);
  const double c = 0.37;
  const SpectralDecomposition a = decompose(y, 0.1, {.functions_up_to = 0.0});
  const SpectralDecomposition b = decompose(y.shifted(c), 0.1, {.functions_up_to = 0.0});
  for (std::size_t i = 0; i < 256; ++i) EXPECT_NEAR(b.eigenvalue(i), a.eigenvalue(i) - c, 1e-9);
  for (double lambda : {-0.8, -0.5, -0.1}) {
    EXPECT_EQ(count_below(a, lambda), count_below(b, lambda - c));
  }
}

TEST(Decompose, RejectsOversizedGrid) {
  const Grid g(0.0, 10.0, 64);
  const Signal y = sech2_signal(g, 5.0);
  DecomposeOptions opts;
  opts.max_dimension = 32;
  EXPECT_THROW(decompose(y, 0.1, opts), ConfigError);
}

TEST(Decompose, PartialDecompositionGuardsMissingFunctions) {
  const Grid g(0.0, 10.0, 128);
  const SpectralDecomposition d = decompose(sech2_signal(g, 5.0), 0.1, {.functions_up_to = -0.5});
  EXPECT_NO_THROW(d.require_functions_up_to(-0.5));
  EXPECT_THROW(d.require_functions_up_to(0.0), ConfigError);
}

TEST(CountBelow, Definitions) {
  const Grid g(0.0, 10.0, 1024);
  const SpectralDecomposition d = decompose(sech2_signal(g, 5.0), 0.1, {.functions_up_to = 0.0});
  EXPECT_EQ(count_below(d, d.eigenvalue(0) - 1.0), 0u);
  EXPECT_EQ(count_below(d, 0.0), d.negative_count());
  // Levels -0.9049, -0.7246, -0.5652 lie below -0.5; -0.4242 does not.
  EXPECT_EQ(count_below(d, -0.5), 3u);
  // Strict: an eigenvalue equal to the cutoff is excluded.
  EXPECT_EQ(count_below(d, d.eigenvalue(2)), 2u);
}

}  // namespace
}  // namespace scsa
