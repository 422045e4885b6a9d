#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lieps {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
///
/// Every constructor validates that entries are finite; arithmetic on valid
/// operands stays finite unless it overflows, which is not checked.
class CMatrix {
 public:
  CMatrix() = default;
  /// n x n zero matrix.
  explicit CMatrix(std::size_t n);
  /// Takes n*n row-major entries. Throws DimensionError / FormatError.
  CMatrix(std::size_t n, std::vector<cplx> entries);
  /// Nested rows, e.g. CMatrix{{1, 2}, {3, 4}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix zero(std::size_t n) { return CMatrix(n); }
  static CMatrix identity(std::size_t n);
  /// Matrix unit with a single one at (i, j), zero-based.
  static CMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static CMatrix diagonal(std::span<const cplx> d);
  /// x y^* (outer product with conjugated y).
  static CMatrix outer(std::span<const cplx> x, std::span<const cplx> y);

  std::size_t n() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<cplx> row(std::size_t i) { return {a_.data() + i * n_, n_}; }
  std::span<const cplx> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
  std::span<const cplx> data() const noexcept { return a_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;

  cplx trace() const;
  double frobenius_norm() const;
  /// Largest entry modulus.
  double max_abs() const;
  bool all_finite() const;

  /// Principal leading block of size k.
  CMatrix leading_block(std::size_t k) const;
  /// this (+) 0_{m}: pads with zero rows/cols up to dimension n + m.
  CMatrix pad(std::size_t m) const;

  CMatrix& operator+=(const CMatrix& b);
  CMatrix& operator-=(const CMatrix& b);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator-(CMatrix a) { return a *= cplx(-1.0); }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

/// A x for a vector x of length n.
std::vector<cplx> multiply(const CMatrix& a, std::span<const cplx> x);

/// [A, B] = AB - BA. Throws DimensionError on mismatch.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// mu A + nu I.
CMatrix apply_affine(const CMatrix& a, cplx mu, cplx nu);

/// Unitary similarity U A U^*.
CMatrix conjugate_by(const CMatrix& u, const CMatrix& a);

/// Determinant by LU with partial pivoting.
cplx determinant(const CMatrix& a);

/// Euclidean vector helpers.
cplx dot(std::span<const cplx> x, std::span<const cplx> y);  // x^* y
double norm(std::span<const cplx> x);

}  // namespace lieps
