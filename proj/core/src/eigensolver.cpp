// SPDX-License-Identifier: Apache-2.0
#include "scsa/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "kernels.hpp"
#include "scsa/error.hpp"

namespace scsa {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Householder reduction A = Q T Q^T. The reflector for step k acts on indices
// k+1 .. n-1 and is stored (without its leading 1) in row k of `work`, right
// of position k+1.
struct Tridiagonal {
  std::size_t n = 0;
  std::vector<double> diag;
  std::vector<double> off;  // off[k] couples k and k+1; off[n-1] = 0
  std::vector<double> work;
  std::vector<double> tau;

  double reflector(std::size_t k, std::size_t i) const noexcept {
    return i == k + 1 ? 1.0 : work[k * n + i];
  }
};

Tridiagonal tridiagonalize(const SymmetricMatrix& matrix) {
  const std::size_t n = matrix.size();
  Tridiagonal t;
  t.n = n;
  t.diag.assign(n, 0.0);
  t.off.assign(n, 0.0);
  t.tau.assign(n, 0.0);
  t.work.assign(matrix.data().begin(), matrix.data().end());
  double* a = t.work.data();

  // Builds the reflector annihilating row k right of k+1; the essential part
  // is written back into the row and also copied to v.
  auto make_reflector = [&](std::size_t k, std::vector<double>& v) {
    double* row = a + k * n;
    const double alpha = row[k + 1];
    double tail = 0.0;
    for (std::size_t j = k + 2; j < n; ++j) tail += row[j] * row[j];
    t.diag[k] = row[k];
    v[k + 1] = 1.0;
    if (tail == 0.0) {
      t.off[k] = alpha;
      t.tau[k] = 0.0;
      for (std::size_t j = k + 2; j < n; ++j) v[j] = row[j] = 0.0;
      return;
    }
    const double norm = std::sqrt(alpha * alpha + tail);
    const double beta = alpha >= 0.0 ? -norm : norm;
    const double scale = 1.0 / (alpha - beta);
    for (std::size_t j = k + 2; j < n; ++j) v[j] = row[j] *= scale;
    t.off[k] = beta;
    t.tau[k] = (beta - alpha) / beta;
  };

  std::vector<double> v(n), p(n), v_next(n), p_next(n);
  if (n >= 3) {
    make_reflector(0, v);
    // p = A22 v from the upper triangle; later products are fused into the update.
    for (std::size_t i = 1; i < n; ++i) {
      const double* ri = a + i * n;
      p[i] += ri[i] * v[i] + detail::dot_axpy(ri + i + 1, v.data() + i + 1, v[i],
                                              p.data() + i + 1, n - i - 1);
    }
  }
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t lo = k + 1;
    const double tau = t.tau[k];
    const bool has_next = lo + 2 < n;
    if (tau != 0.0) {
      double pv = 0.0;
      for (std::size_t i = lo; i < n; ++i) {
        p[i] *= tau;
        pv += p[i] * v[i];
      }
      const double half = 0.5 * tau * pv;
      for (std::size_t i = lo; i < n; ++i) p[i] -= half * v[i];  // p now holds w
    }
    std::fill(p_next.begin(), p_next.end(), 0.0);
    for (std::size_t i = lo; i < n; ++i) {
      double* ri = a + i * n;
      if (tau != 0.0) {
        const double vi = v[i];
        const double wi = p[i];
        for (std::size_t j = i; j < n; ++j) ri[j] -= vi * p[j] + wi * v[j];
      }
      if (!has_next) continue;
      if (i == lo) {
        make_reflector(lo, v_next);
        continue;
      }
      p_next[i] += ri[i] * v_next[i] +
                   detail::dot_axpy(ri + i + 1, v_next.data() + i + 1, v_next[i],
                                    p_next.data() + i + 1, n - i - 1);
    }
    std::swap(v, v_next);
    std::swap(p, p_next);
  }
  if (n >= 2) {
    t.diag[n - 2] = a[(n - 2) * n + (n - 2)];
    t.off[n - 2] = a[(n - 2) * n + (n - 1)];
  }
  if (n >= 1) t.diag[n - 1] = a[(n - 1) * n + (n - 1)];
  return t;
}

// Q^T = H_{n-3} ... H_0, accumulated in place. Row i of the result is column i of Q.
std::vector<double> transform_transposed(const Tridiagonal& t) {
  const std::size_t n = t.n;
  std::vector<double> x(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i * n + i] = 1.0;
  std::vector<double> v(n);
  for (std::size_t kk = n >= 2 ? n - 2 : 0; kk-- > 0;) {
    const std::size_t k = kk;
    const double tau = t.tau[k];
    if (tau == 0.0) continue;
    const std::size_t lo = k + 1;
    for (std::size_t i = lo; i < n; ++i) v[i] = t.reflector(k, i);
    // X <- X (I - tau v v^T); only rows >= lo have support on columns >= lo.
    for (std::size_t r = lo; r < n; ++r) {
      double* xr = x.data() + r * n;
      const double f = tau * detail::dot(xr + lo, v.data() + lo, n - lo);
      detail::axpy(-f, v.data() + lo, xr + lo, n - lo);
    }
  }
  return x;
}

// Implicit-shift QL on (diag, off). When `rows` is non-null the Givens
// rotations are applied to its rows (row i tracks eigenvector i).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* rows,
                    int max_iterations) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e[n - 1] = 0.0;
  double shift_total = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > kEps * tst1) ++m;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iterations) {
          throw InvariantError("eigendecompose: QL iteration did not converge for eigenvalue " +
                               std::to_string(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          const std::size_t i = ii;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (rows != nullptr) {
            double* zi = rows->data() + i * n;
            double* zi1 = zi + n;
            for (std::size_t k = 0; k < n; ++k) {
              const double t = zi1[k];
              zi1[k] = s * zi[k] + c * t;
              zi[k] = c * zi[k] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kEps * tst1);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }
}

// Solves (T - mu I) x = b in place by Gaussian elimination with partial
// pivoting; tiny pivots are replaced by `pivot_floor`.
class ShiftedTridiagonalSolver {
 public:
  ShiftedTridiagonalSolver(const std::vector<double>& d, const std::vector<double>& e, double mu,
                           double pivot_floor)
      : n_(d.size()), u0_(n_), u1_(n_, 0.0), u2_(n_, 0.0), mult_(n_, 0.0), swapped_(n_, false) {
    for (std::size_t i = 0; i < n_; ++i) u0_[i] = d[i] - mu;
    for (std::size_t i = 0; i + 1 < n_; ++i) u1_[i] = e[i];
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const double sub = e[i];
      if (std::abs(u0_[i]) >= std::abs(sub)) {
        if (u0_[i] == 0.0) u0_[i] = pivot_floor;
        mult_[i] = sub / u0_[i];
        u0_[i + 1] -= mult_[i] * u1_[i];
      } else {
        swapped_[i] = true;
        const double m = u0_[i] / sub;
        mult_[i] = m;
        const double next_diag = u0_[i + 1];
        const double next_super = i + 2 < n_ ? e[i + 1] : 0.0;
        u0_[i] = sub;
        const double old_super = u1_[i];
        u1_[i] = next_diag;
        u2_[i] = next_super;
        u0_[i + 1] = old_super - m * next_diag;
        if (i + 2 < n_) u1_[i + 1] = -m * next_super;
      }
    }
    for (double& u : u0_) {
      if (std::abs(u) < pivot_floor) u = u < 0.0 ? -pivot_floor : pivot_floor;
    }
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (swapped_[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= mult_[i] * b[i];
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      double acc = b[ii];
      if (ii + 1 < n_) acc -= u1_[ii] * b[ii + 1];
      if (ii + 2 < n_) acc -= u2_[ii] * b[ii + 2];
      b[ii] = acc / u0_[ii];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> u0_, u1_, u2_, mult_;
  std::vector<bool> swapped_;
};

double normalize(std::vector<double>& x) {
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : x) v /= norm;
  return norm;
}

// Eigenvectors of the tridiagonal matrix for ascending eigenvalues
// values[0 .. count-1] by inverse iteration. Vectors belonging to a cluster of
// close eigenvalues are kept orthogonal by modified Gram-Schmidt.
std::vector<double> tridiagonal_vectors(const std::vector<double>& d, const std::vector<double>& e,
                                        const std::vector<double>& values, std::size_t count) {
  const std::size_t n = d.size();
  std::vector<double> out(count * n);
  double tnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(d[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i + 1 < n) row += std::abs(e[i]);
    tnorm = std::max(tnorm, row);
  }
  if (tnorm == 0.0) tnorm = 1.0;
  const double cluster_gap = 1e-3 * tnorm;
  const double pivot_floor = kEps * tnorm;

  std::mt19937_64 rng(0x5eed5ca1ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::size_t cluster_start = 0;
  double previous_shift = 0.0;
  std::vector<double> x(n), last(n);
  for (std::size_t k = 0; k < count; ++k) {
    double mu = values[k];
    if (k > 0 && values[k] - values[k - 1] > cluster_gap) cluster_start = k;
    if (k > cluster_start && mu - previous_shift < 10.0 * kEps * std::abs(mu)) {
      mu = previous_shift + 10.0 * kEps * std::max(std::abs(mu), tnorm * kEps);
    }
    previous_shift = mu;
    const ShiftedTridiagonalSolver solver(d, e, mu, pivot_floor);

    for (double& v : x) v = unit(rng);
    normalize(x);
    for (int iter = 0; iter < 8; ++iter) {
      last = x;
      solver.solve(x);
      for (std::size_t c = cluster_start; c < k; ++c) {
        const double* q = out.data() + c * n;
        detail::axpy(-detail::dot(q, x.data(), n), q, x.data(), n);
      }
      normalize(x);
      double overlap = 0.0;
      for (std::size_t i = 0; i < n; ++i) overlap += x[i] * last[i];
      if (iter >= 1 && 1.0 - std::abs(overlap) < 1e-14) break;
    }
    std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(k * n));
  }
  return out;
}

// y <- Q y for every stored vector, Q = H_0 H_1 ... H_{n-3}.
void back_transform(const Tridiagonal& t, std::vector<double>& vectors, std::size_t count) {
  const std::size_t n = t.n;
  std::vector<double> v(n);
  for (std::size_t kk = n >= 2 ? n - 2 : 0; kk-- > 0;) {
    const std::size_t k = kk;
    const double tau = t.tau[k];
    if (tau == 0.0) continue;
    const std::size_t lo = k + 1;
    for (std::size_t i = lo; i < n; ++i) v[i] = t.reflector(k, i);
    for (std::size_t c = 0; c < count; ++c) {
      double* y = vectors.data() + c * n;
      const double f = tau * detail::dot(v.data() + lo, y + lo, n - lo);
      detail::axpy(-f, v.data() + lo, y + lo, n - lo);
    }
  }
}

void sort_ascending(Eigensystem& sys, bool with_vectors) {
  const std::size_t n = sys.values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sys.values[x] < sys.values[y]; });
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = sys.values[order[i]];
  sys.values = std::move(values);
  if (with_vectors) {
    std::vector<double> vectors(sys.vectors.size());
    for (std::size_t i = 0; i < n; ++i) {
      std::copy_n(sys.vectors.begin() + static_cast<std::ptrdiff_t>(order[i] * n), n,
                  vectors.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
    sys.vectors = std::move(vectors);
  }
}

}  // namespace

Eigensystem eigendecompose(const SymmetricMatrix& matrix, const EigenOptions& options) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(matrix(i, j) - matrix(j, i)) > 1e-12) {
        throw ConfigError("eigendecompose: matrix is not symmetric");
      }
    }
  }
  Eigensystem sys;
  sys.n = n;
  if (n == 0) return sys;

  Tridiagonal t = tridiagonalize(matrix);
  if (!options.vectors_up_to) {
    std::vector<double> d = t.diag;
    std::vector<double> e = t.off;
    std::vector<double> rows = transform_transposed(t);
    tridiagonal_ql(d, e, &rows, options.max_ql_iterations);
    sys.values = std::move(d);
    sys.vectors = std::move(rows);
    sort_ascending(sys, true);
    return sys;
  }

  std::vector<double> d = t.diag;
  std::vector<double> e = t.off;
  tridiagonal_ql(d, e, nullptr, options.max_ql_iterations);
  sys.values = std::move(d);
  sort_ascending(sys, false);
  const double cutoff = *options.vectors_up_to;
  const auto count = static_cast<std::size_t>(
      std::upper_bound(sys.values.begin(), sys.values.end(), cutoff) - sys.values.begin());
  sys.vectors = tridiagonal_vectors(t.diag, t.off, sys.values, count);
  back_transform(t, sys.vectors, count);
  return sys;
}

SpectralDecomposition::SpectralDecomposition(Grid grid, double h, Eigensystem system)
    : grid_(grid),
      h_(h),
      values_(std::move(system.values)),
      functions_(std::move(system.vectors)),
      function_count_(0),
      spectral_radius_(0.0),
      tie_epsilon_(0.0),
      negative_count_(0) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("spectral decomposition: eigenvalue count does not match the grid");
  }
  function_count_ = functions_.size() / grid_.size();
  const double scale = 1.0 / std::sqrt(grid_.spacing());
  for (double& v : functions_) v *= scale;
  for (double v : values_) spectral_radius_ = std::max(spectral_radius_, std::abs(v));
  tie_epsilon_ = 1e-10 * spectral_radius_;
  negative_count_ = static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [&](double v) { return v < -tie_epsilon_; }));
}

void SpectralDecomposition::require_functions_up_to(double lambda) const {
  if (function_count_ == values_.size()) return;
  const auto needed = static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(),
                    [&](double v) { return v <= lambda + tie_epsilon_; }));
  if (needed > function_count_) {
    throw ConfigError("spectral decomposition: eigenfunctions were only computed for the lowest " +
                      std::to_string(function_count_) + " eigenvalues, " +
                      std::to_string(needed) + " are needed at lambda = " + std::to_string(lambda));
  }
}

SpectralDecomposition decompose(const Signal& signal, double h, const DecomposeOptions& options) {
  const Grid& grid = signal.grid();
  if (grid.size() > options.max_dimension) {
    throw ConfigError("decompose: M = " + std::to_string(grid.size()) +
                      " exceeds the dense limit " + std::to_string(options.max_dimension));
  }
  const SymmetricMatrix d2 = second_derivative(grid, options.scheme);
  const SymmetricMatrix op = hamiltonian(signal, h, d2);
  EigenOptions eig;
  eig.vectors_up_to = options.functions_up_to;
  return SpectralDecomposition(grid, h, eigendecompose(op, eig));
}

std::size_t count_below(const SpectralDecomposition& decomp, double lambda) {
  const double cut = lambda - decomp.tie_epsilon();
  const auto values = decomp.eigenvalues();
  return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), cut) -
                                  values.begin());
}

DecompositionDiagnostics diagnose(const SpectralDecomposition& decomp,
                                  const SymmetricMatrix& hamiltonian) {
  DecompositionDiagnostics out;
  const std::size_t m = decomp.grid().size();
  const std::size_t k = decomp.eigenfunction_count();
  const double dx = decomp.grid().spacing();
  out.spectral_radius = decomp.spectral_radius();

  for (std::size_t a = 0; a < k; ++a) {
    const auto fa = decomp.eigenfunction(a);
    for (std::size_t b = a; b < k; ++b) {
      const double dot = dx * detail::dot(fa.data(), decomp.eigenfunction(b).data(), m);
      out.gram_deviation = std::max(out.gram_deviation, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }

  for (std::size_t a = 0; a < k; ++a) {
    const auto f = decomp.eigenfunction(a);
    const std::vector<double> hf = hamiltonian.apply(f);
    const double lambda = decomp.eigenvalue(a);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double r = hf[j] - lambda * f[j];
      num += r * r;
      den += f[j] * f[j];
    }
    out.max_residual = std::max(out.max_residual, std::sqrt(num / den));
  }

  if (k == m) {
    double trace = 0.0;
    for (std::size_t j = 0; j < m; ++j) trace += hamiltonian(j, j);
    const auto values = decomp.eigenvalues();
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    out.trace_mismatch = std::abs(sum - trace) / std::max(std::abs(trace), out.spectral_radius);
  } else {
    out.trace_mismatch = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace scsa
