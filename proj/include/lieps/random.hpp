#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "lieps/cmatrix.hpp"

namespace lieps {

/// Explicit seeded stream; pass by value to keep runs deterministic.
using Rng = std::mt19937_64;

/// splitmix64 finaliser: derives independent child seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Standard complex Gaussian (real and imaginary parts N(0, 1/2)).
cplx complex_gaussian(Rng& rng);
std::vector<cplx> gaussian_vector(std::size_t n, Rng& rng);
CMatrix gaussian_matrix(std::size_t n, Rng& rng);

/// Uniform point on the unit circle.
cplx unit_scalar(Rng& rng);

/// Rank-one nilpotent X = x y^* with y orthogonal to x.
struct RankOneNilpotent {
  std::vector<cplx> x;
  std::vector<cplx> y;

  /// Checks x, y nonzero, equal length, |y^* x| <= 1e-12 ||x|| ||y||.
  /// Throws InvalidTarget otherwise.
  RankOneNilpotent(std::vector<cplx> x_, std::vector<cplx> y_);

  std::size_t n() const { return x.size(); }
  CMatrix matrix() const { return CMatrix::outer(x, y); }
  /// ||x|| ||y||, the only nonzero singular value.
  double weight() const;
};

/// Haar unitary: Gaussian matrix, Gram-Schmidt with reorthogonalisation.
CMatrix random_unitary(std::size_t n, std::uint64_t seed);
CMatrix random_unitary(std::size_t n, Rng& rng);

/// Gaussian x, Gaussian y projected onto x^perp. Requires n >= 2.
RankOneNilpotent random_rank_one_nilpotent(std::size_t n, std::uint64_t seed);
RankOneNilpotent random_rank_one_nilpotent(std::size_t n, Rng& rng);

enum class Family {
  Dense,          ///< i.i.d. complex Gaussian entries
  Normal,         ///< U diag(Gaussian) U^*
  TwoEigNormal,   ///< U (alpha I_k (+) beta I_{n-k}) U^*, 1 <= k < n
  Triangular,     ///< Gaussian upper triangular
  Nilpotent,      ///< U (strictly upper Gaussian) U^*
};

std::string_view to_string(Family f);
/// Accepts dense, normal, two-eig-normal, triangular, nilpotent.
Family family_from_string(std::string_view s);

CMatrix random_matrix(std::size_t n, std::uint64_t seed, Family family);
CMatrix random_matrix(std::size_t n, Rng& rng, Family family);

}  // namespace lieps
