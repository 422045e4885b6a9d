#include "lieps/cmatrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "lieps/errors.hpp"
#include "lieps/kernels.hpp"

namespace lieps {
namespace {

void require_same(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.n() != b.n()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.n()) +
                         " vs " + std::to_string(b.n()) + ")");
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t n) : n_(n), a_(n * n) {}

CMatrix::CMatrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) {
    throw DimensionError("CMatrix: expected " + std::to_string(n * n) + " entries, got " +
                         std::to_string(a_.size()));
  }
  if (!all_finite()) throw FormatError("CMatrix: non-finite entry");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw DimensionError("CMatrix: ragged initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw FormatError("CMatrix: non-finite entry");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  CMatrix m(n);
  m(i, j) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  if (!m.all_finite()) throw FormatError("CMatrix: non-finite entry");
  return m;
}

CMatrix CMatrix::outer(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw DimensionError("outer: vector lengths differ");
  CMatrix m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * std::conj(y[j]);
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m = *this;
  for (auto& v : m.a_) v = std::conj(v);
  return m;
}

cplx CMatrix::trace() const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double CMatrix::frobenius_norm() const {
  return std::sqrt(kernels::active().norm2(a_.data(), a_.size()));
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool CMatrix::all_finite() const {
  for (const auto& v : a_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

CMatrix CMatrix::leading_block(std::size_t k) const {
  if (k > n_) throw DimensionError("leading_block: k exceeds dimension");
  CMatrix m(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
  }
  return m;
}

CMatrix CMatrix::pad(std::size_t extra) const {
  CMatrix m(n_ + extra);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  }
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& b) {
  require_same(*this, b, "operator+");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& b) {
  require_same(*this, b, "operator-");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same(a, b, "operator*");
  const std::size_t n = a.n();
  const auto& k = kernels::active();
  CMatrix c(n);
  // Row i of C accumulates a(i, p) * row p of B.
  for (std::size_t i = 0; i < n; ++i) {
    cplx* ci = c.row(i).data();
    for (std::size_t p = 0; p < n; ++p) {
      const cplx aip = a(i, p);
      if (aip != cplx(0.0)) k.axpy(aip, b.row(p).data(), ci, n);
    }
  }
  return c;
}

std::vector<cplx> multiply(const CMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.n()) throw DimensionError("multiply: vector length mismatch");
  std::vector<cplx> y(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.n(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  require_same(a, b, "commutator");
  return a * b - b * a;
}

CMatrix apply_affine(const CMatrix& a, cplx mu, cplx nu) {
  CMatrix m = a * mu;
  for (std::size_t i = 0; i < m.n(); ++i) m(i, i) += nu;
  return m;
}

CMatrix conjugate_by(const CMatrix& u, const CMatrix& a) { return u * a * u.adjoint(); }

cplx determinant(const CMatrix& a) {
  const std::size_t n = a.n();
  CMatrix lu = a;
  cplx det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    }
    if (lu(piv, k) == cplx(0.0)) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) / lu(k, k);
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  return kernels::active().dotc(x.data(), y.data(), x.size());
}

double norm(std::span<const cplx> x) { return std::sqrt(kernels::active().norm2(x.data(), x.size())); }

}  // namespace lieps
