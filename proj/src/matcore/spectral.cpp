#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"

namespace lieps {

SpectralData eigenvalues(const CMatrix& a, const SolverOptions& opts) {
  const std::size_t n = a.n();
  const SchurForm s = schur(a, opts);
  SpectralData out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = s.t(i, i);

  const double anorm = a.frobenius_norm();
  const double small = std::max(anorm, 1.0) * std::numeric_limits<double>::epsilon();
  // Eigenvectors of T by back substitution, mapped through Q.
  std::vector<cplx> v(n), x(n);
  for (std::size_t k = 0; k < n && anorm > 0.0; ++k) {
    std::fill(v.begin(), v.end(), cplx(0.0));
    v[k] = 1.0;
    const cplx lambda = s.t(k, k);
    for (std::size_t ii = k; ii-- > 0;) {
      cplx acc = 0.0;
      for (std::size_t j = ii + 1; j <= k; ++j) acc += s.t(ii, j) * v[j];
      cplx d = s.t(ii, ii) - lambda;
      if (std::abs(d) < small) d = small;
      v[ii] = -acc / d;
    }
    x = multiply(s.q, v);
    const double xn = norm(x);
    for (auto& e : x) e /= xn;
    const auto ax = multiply(a, x);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += std::norm(ax[i] - lambda * x[i]);
    out.residual = std::max(out.residual, std::sqrt(r) / anorm);
  }

  out.min_gap = n < 2 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.min_gap = std::min(out.min_gap, std::abs(out.eigenvalues[i] - out.eigenvalues[j]));
    }
  }
  return out;
}

double normality_residual(const CMatrix& a) {
  const CMatrix ah = a.adjoint();
  const double f = a.frobenius_norm();
  return (a * ah - ah * a).frobenius_norm() / std::max(1.0, f * f);
}

bool is_normal(const CMatrix& a, double tol) {
  if (!(tol > 0.0)) throw ToleranceError("is_normal: tol must be positive");
  return normality_residual(a) <= tol;
}

double eigenvalue_spread(const std::vector<cplx>& ev) {
  double spread = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t j = i + 1; j < ev.size(); ++j) spread = std::max(spread, std::abs(ev[i] - ev[j]));
  }
  return spread;
}

std::vector<std::size_t> eigenvalue_clusters(const std::vector<cplx>& ev, double tol) {
  if (!(tol > 0.0)) throw ToleranceError("eigenvalue_clusters: tol must be positive");
  const std::size_t n = ev.size();
  const double threshold = tol * (1.0 + eigenvalue_spread(ev));
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(ev[i] - ev[j]) <= threshold) parent[find(j)] = find(i);
    }
  }
  std::vector<std::size_t> label(n), root_label(n, n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (root_label[r] == n) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

std::size_t distinct_eigenvalue_count(const SpectralData& s, double tol) {
  if (s.eigenvalues.empty()) return 0;
  const auto labels = eigenvalue_clusters(s.eigenvalues, tol);
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

bool eigenvalues_collinear(const SpectralData& s, double tol) {
  if (!(tol > 0.0)) throw ToleranceError("eigenvalues_collinear: tol must be positive");
  const auto& ev = s.eigenvalues;
  if (distinct_eigenvalue_count(s, tol) <= 2) return true;
  std::size_t p = 0, q = 0;
  double spread = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t j = i + 1; j < ev.size(); ++j) {
      const double d = std::abs(ev[i] - ev[j]);
      if (d > spread) {
        spread = d;
        p = i;
        q = j;
      }
    }
  }
  const cplx dir = (ev[q] - ev[p]) / spread;
  for (const auto& l : ev) {
    const double perp = std::abs(((l - ev[p]) * std::conj(dir)).imag());
    if (perp > tol * spread) return false;
  }
  return true;
}

}  // namespace lieps
