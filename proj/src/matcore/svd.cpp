// One-sided (Hestenes) Jacobi SVD. Columns of a column-major copy are
// orthogonalised pairwise; the singular values are the final column norms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"

namespace lieps {
namespace {

// Column-major working copy of A - zI.
std::vector<cplx> columns_of(const CMatrix& a, cplx z) {
  const std::size_t n = a.n();
  std::vector<cplx> g(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g[j * n + i] = a(i, j);
  }
  for (std::size_t j = 0; j < n; ++j) g[j * n + j] -= z;
  return g;
}

std::vector<double> jacobi_column_norms(std::vector<cplx>& g, std::size_t n,
                                        const SolverOptions& opts, const kernels::Table& k) {
  std::vector<double> sq(n);
  for (std::size_t j = 0; j < n; ++j) sq[j] = k.norm2(&g[j * n], n);

  const std::size_t max_sweeps = std::max<std::size_t>(1, opts.sweeps_per_dim * n);
  bool converged = n < 2;
  for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        cplx* gp = &g[p * n];
        cplx* gq = &g[q * n];
        const double alpha = sq[p];
        const double beta = sq[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        const cplx gamma = k.dotc(gp, gq, n);
        const double mag = std::abs(gamma);
        if (mag <= opts.threshold * std::sqrt(alpha * beta)) continue;
        converged = false;

        const double zeta = (beta - alpha) / (2.0 * mag);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        const cplx phase = std::conj(gamma) / mag;  // e^{-i arg gamma}
        k.rot(gp, gq, n, c, s * phase);
        // Exact updates would be alpha - t|gamma| and beta + t|gamma|;
        // recompute to avoid drift on tiny columns.
        sq[p] = k.norm2(gp, n);
        sq[q] = k.norm2(gq, n);
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("singular_values: Jacobi sweep cap reached (n=" + std::to_string(n) +
                           ")");
  }
  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = std::sqrt(sq[j]);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace

std::vector<double> singular_values(const CMatrix& a, const SolverOptions& opts,
                                    const kernels::Table& k) {
  auto g = columns_of(a, 0.0);
  return jacobi_column_norms(g, a.n(), opts, k);
}

double smin_shift(const CMatrix& a, cplx z, const SolverOptions& opts, const kernels::Table& k) {
  if (a.n() == 0) return 0.0;
  auto g = columns_of(a, z);
  return jacobi_column_norms(g, a.n(), opts, k).back();
}

double spectral_norm(const CMatrix& a) {
  if (a.n() == 0) return 0.0;
  return singular_values(a).front();
}

}  // namespace lieps
