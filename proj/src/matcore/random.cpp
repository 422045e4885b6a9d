#include "lieps/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lieps/errors.hpp"

namespace lieps {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

cplx complex_gaussian(Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

std::vector<cplx> gaussian_vector(std::size_t n, Rng& rng) {
  std::vector<cplx> v(n);
  for (auto& e : v) e = complex_gaussian(rng);
  return v;
}

CMatrix gaussian_matrix(std::size_t n, Rng& rng) {
  std::vector<cplx> e(n * n);
  for (auto& v : e) v = complex_gaussian(rng);
  return CMatrix(n, std::move(e));
}

cplx unit_scalar(Rng& rng) {
  std::uniform_real_distribution<double> ud(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, ud(rng));
}

RankOneNilpotent::RankOneNilpotent(std::vector<cplx> x_, std::vector<cplx> y_)
    : x(std::move(x_)), y(std::move(y_)) {
  if (x.size() != y.size()) throw DimensionError("RankOneNilpotent: x and y lengths differ");
  const double nx = norm(x), ny = norm(y);
  if (nx == 0.0 || ny == 0.0) throw InvalidTarget("RankOneNilpotent: zero factor");
  if (std::abs(dot(y, x)) > 1e-12 * nx * ny) {
    throw InvalidTarget("RankOneNilpotent: factors are not orthogonal");
  }
}

double RankOneNilpotent::weight() const { return norm(x) * norm(y); }

CMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

CMatrix random_unitary(std::size_t n, Rng& rng) {
  // Columns of a Gaussian matrix, orthonormalised by modified Gram-Schmidt
  // run twice. Positive R diagonal makes the result Haar distributed.
  std::vector<std::vector<cplx>> cols(n);
  for (auto& c : cols) c = gaussian_vector(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const cplx r = dot(cols[i], cols[j]);
        for (std::size_t k = 0; k < n; ++k) cols[j][k] -= r * cols[i][k];
      }
    }
    const double nr = norm(cols[j]);
    for (auto& e : cols[j]) e /= nr;
  }
  CMatrix u(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) u(i, j) = cols[j][i];
  }
  return u;
}

RankOneNilpotent random_rank_one_nilpotent(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_rank_one_nilpotent(n, rng);
}

RankOneNilpotent random_rank_one_nilpotent(std::size_t n, Rng& rng) {
  if (n < 2) throw DimensionError("random_rank_one_nilpotent: n must be >= 2");
  auto x = gaussian_vector(n, rng);
  auto y = gaussian_vector(n, rng);
  const double xx = std::norm(norm(x));
  for (int pass = 0; pass < 2; ++pass) {
    const cplx r = dot(x, y) / xx;
    for (std::size_t k = 0; k < n; ++k) y[k] -= r * x[k];
  }
  return RankOneNilpotent(std::move(x), std::move(y));
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Dense: return "dense";
    case Family::Normal: return "normal";
    case Family::TwoEigNormal: return "two-eig-normal";
    case Family::Triangular: return "triangular";
    case Family::Nilpotent: return "nilpotent";
  }
  return "?";
}

Family family_from_string(std::string_view s) {
  for (Family f : {Family::Dense, Family::Normal, Family::TwoEigNormal, Family::Triangular,
                   Family::Nilpotent}) {
    if (s == to_string(f)) return f;
  }
  throw FormatError("unknown matrix family '" + std::string(s) + "'");
}

CMatrix random_matrix(std::size_t n, std::uint64_t seed, Family family) {
  Rng rng(seed);
  return random_matrix(n, rng, family);
}

CMatrix random_matrix(std::size_t n, Rng& rng, Family family) {
  if (n == 0) throw DimensionError("random_matrix: n must be >= 1");
  switch (family) {
    case Family::Dense:
      return gaussian_matrix(n, rng);
    case Family::Normal: {
      const CMatrix u = random_unitary(n, rng);
      return conjugate_by(u, CMatrix::diagonal(gaussian_vector(n, rng)));
    }
    case Family::TwoEigNormal: {
      if (n < 2) throw DimensionError("random_matrix: two-eig-normal needs n >= 2");
      const CMatrix u = random_unitary(n, rng);
      std::uniform_int_distribution<std::size_t> kd(1, n - 1);
      const std::size_t k = kd(rng);
      const cplx alpha = complex_gaussian(rng);
      // Keep the two eigenvalues well separated.
      const cplx beta = alpha + std::polar(0.5 + std::abs(complex_gaussian(rng)),
                                           std::arg(complex_gaussian(rng)));
      std::vector<cplx> d(n, beta);
      for (std::size_t i = 0; i < k; ++i) d[i] = alpha;
      return conjugate_by(u, CMatrix::diagonal(d));
    }
    case Family::Triangular: {
      CMatrix m = gaussian_matrix(n, rng);
      for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) m(i, j) = 0.0;
      }
      return m;
    }
    case Family::Nilpotent: {
      CMatrix m = gaussian_matrix(n, rng);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) m(i, j) = 0.0;
      }
      return conjugate_by(random_unitary(n, rng), m);
    }
  }
  throw FormatError("random_matrix: unknown family");
}

}  // namespace lieps
