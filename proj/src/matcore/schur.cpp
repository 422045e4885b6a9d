// Complex Schur decomposition: Householder reduction to Hessenberg form, then
// implicit single-shift QR with Wilkinson shifts and Givens bulge chasing.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"

namespace lieps {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// G = [c, s; -conj(s), c] with G [f; g] = [r; 0].
struct Givens {
  double c = 1.0;
  cplx s = 0.0;
};

Givens make_givens(cplx f, cplx g) {
  const double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) return {1.0, 0.0};
  if (af == 0.0) return {0.0, std::conj(g) / ag};
  const double nrm = std::hypot(af, ag);
  return {af / nrm, (f / af) * std::conj(g) / nrm};
}

// Rows i, k of M (columns [j0, j1)): M <- G M.
void rotate_rows(CMatrix& m, std::size_t i, std::size_t k, std::size_t j0, std::size_t j1,
                 const Givens& g) {
  for (std::size_t j = j0; j < j1; ++j) {
    const cplx x = m(i, j), y = m(k, j);
    m(i, j) = g.c * x + g.s * y;
    m(k, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// Columns i, k of M (rows [r0, r1)): M <- M G^*.
void rotate_cols(CMatrix& m, std::size_t i, std::size_t k, std::size_t r0, std::size_t r1,
                 const Givens& g) {
  for (std::size_t r = r0; r < r1; ++r) {
    const cplx u = m(r, i), v = m(r, k);
    m(r, i) = g.c * u + std::conj(g.s) * v;
    m(r, k) = -g.s * u + g.c * v;
  }
}

void hessenberg(CMatrix& h, CMatrix& q) {
  const std::size_t n = h.n();
  std::vector<cplx> v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
    if (tail == 0.0) continue;

    v.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) v[i] = h(k + 1 + i, k);
    const double xnorm = std::sqrt(tail + std::norm(v[0]));
    const cplx phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : cplx(1.0);
    v[0] += phase * xnorm;
    double vn = 0.0;
    for (const auto& e : v) vn += std::norm(e);
    vn = std::sqrt(vn);
    for (auto& e : v) e /= vn;

    // H <- P H with P = I - 2 v v^* on rows k+1..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
      s *= 2.0;
      for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= v[i] * s;
    }
    // H <- H P and Q <- Q P on columns k+1..n-1.
    for (CMatrix* mat : {&h, &q}) {
      for (std::size_t r = 0; r < n; ++r) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += (*mat)(r, k + 1 + i) * v[i];
        s *= 2.0;
        for (std::size_t i = 0; i < m; ++i) (*mat)(r, k + 1 + i) -= s * std::conj(v[i]);
      }
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

cplx wilkinson_shift(const CMatrix& h, std::size_t hi) {
  const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
  const cplx c = h(hi, hi - 1), d = h(hi, hi);
  const cplx half = 0.5 * (a - d);
  const cplx disc = std::sqrt(half * half + b * c);
  const cplx m = 0.5 * (a + d);
  const cplx e1 = m + disc, e2 = m - disc;
  return std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
}

}  // namespace

SchurForm schur(const CMatrix& a, const SolverOptions& opts) {
  const std::size_t n = a.n();
  SchurForm s{CMatrix::identity(n), a};
  if (n < 2) return s;
  CMatrix& h = s.t;
  CMatrix& q = s.q;
  hessenberg(h, q);

  const double scale = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
  const std::size_t cap = std::max<std::size_t>(1, opts.sweeps_per_dim * n);
  std::size_t total = 0;
  std::size_t since_deflation = 0;
  std::size_t hi = n - 1;
  while (hi > 0) {
    std::size_t lo = hi;
    while (lo > 0) {
      double ref = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (ref == 0.0) ref = scale;
      if (std::abs(h(lo, lo - 1)) <= kEps * ref) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++total > cap) {
      throw ConvergenceError("schur: QR iteration cap reached (n=" + std::to_string(n) + ")");
    }
    ++since_deflation;

    cplx mu = wilkinson_shift(h, hi);
    if (since_deflation % 10 == 0) {
      // Exceptional shift breaks rare cycles.
      mu = h(hi, hi) + cplx(0.75, 0.25) * std::abs(h(hi, hi - 1));
    }

    Givens g = make_givens(h(lo, lo) - mu, h(lo + 1, lo));
    rotate_rows(h, lo, lo + 1, lo, n, g);
    rotate_cols(h, lo, lo + 1, 0, std::min(lo + 3, hi + 1), g);
    rotate_cols(q, lo, lo + 1, 0, n, g);
    for (std::size_t k = lo + 1; k < hi; ++k) {
      g = make_givens(h(k, k - 1), h(k + 1, k - 1));
      rotate_rows(h, k, k + 1, k - 1, n, g);
      h(k + 1, k - 1) = 0.0;
      rotate_cols(h, k, k + 1, 0, std::min(k + 3, hi + 1), g);
      rotate_cols(q, k, k + 1, 0, n, g);
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) h(i, j) = 0.0;
  }
  return s;
}

void schur_swap(SchurForm& s, std::size_t k) {
  CMatrix& t = s.t;
  const std::size_t n = t.n();
  if (k + 1 >= n) throw DimensionError("schur_swap: index out of range");
  const cplx t11 = t(k, k), t22 = t(k + 1, k + 1);
  if (t11 == t22) {
    if (t(k, k + 1) != cplx(0.0)) return;  // a Jordan-like pair cannot be reordered
    // The 2x2 block is a multiple of I; a permutation keeps T triangular.
    for (std::size_t j = 0; j < n; ++j) std::swap(t(k, j), t(k + 1, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(t(i, k), t(i, k + 1));
    for (std::size_t i = 0; i < n; ++i) std::swap(s.q(i, k), s.q(i, k + 1));
    return;
  }
  const Givens g = make_givens(t(k, k + 1), t22 - t11);
  rotate_rows(t, k, k + 1, k, n, g);
  rotate_cols(t, k, k + 1, 0, k + 2, g);
  rotate_cols(s.q, k, k + 1, 0, n, g);
  t(k + 1, k) = 0.0;
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
}

}  // namespace lieps
