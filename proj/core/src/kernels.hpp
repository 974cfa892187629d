// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace scsa::detail {

// Dense kernels with split accumulators so the compiler can pipeline and
// vectorize reductions without reassociation flags.

inline double dot(const double* x, const double* y, std::size_t n) noexcept {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < n; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

// y += alpha * x
inline void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// Returns sum_j row[j] * v[j] and performs p[j] += row[j] * scale over the
// same range; one pass of a symmetric matrix-vector product over a row.
inline double dot_axpy(const double* row, const double* v, double scale, double* p,
                       std::size_t n) noexcept {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += row[i] * v[i];
    s1 += row[i + 1] * v[i + 1];
    s2 += row[i + 2] * v[i + 2];
    s3 += row[i + 3] * v[i + 3];
    p[i] += row[i] * scale;
    p[i + 1] += row[i + 1] * scale;
    p[i + 2] += row[i + 2] * scale;
    p[i + 3] += row[i + 3] * scale;
  }
  for (; i < n; ++i) {
    s0 += row[i] * v[i];
    p[i] += row[i] * scale;
  }
  return (s0 + s1) + (s2 + s3);
}

}  // namespace scsa::detail
