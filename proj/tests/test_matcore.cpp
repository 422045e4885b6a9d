#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/random.hpp"

using namespace lieps;

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& a) {
  Eigen::MatrixXcd m(a.n(), a.n());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) m(i, j) = a(i, j);
  return m;
}

// Greedy nearest matching; returns the largest matched distance.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  EXPECT_EQ(a.size(), b.size());
  double worst = 0.0;
  for (cplx z : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](cplx p, cplx q) { return std::abs(p - z) < std::abs(q - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

const Family kFamilies[] = {Family::Dense, Family::Normal, Family::TwoEigNormal, Family::Triangular,
                            Family::Nilpotent};

}  // namespace

TEST(CMatrix, RejectsBadShapes) {
  EXPECT_THROW(CMatrix(2, std::vector<cplx>(3)), DimensionError);
  EXPECT_THROW((CMatrix{{1, 2}, {3}}), DimensionError);
  EXPECT_THROW(CMatrix(1, std::vector<cplx>{cplx(NAN, 0)}), FormatError);
  EXPECT_THROW(commutator(CMatrix(2), CMatrix(3)), DimensionError);
}

TEST(CMatrix, BasicAlgebra) {
  const CMatrix e12 = CMatrix::unit(2, 0, 1), e21 = CMatrix::unit(2, 1, 0);
  EXPECT_EQ(commutator(e12, e21), (CMatrix{{1, 0}, {0, -1}}));
  EXPECT_EQ(e12.adjoint(), e21);
  EXPECT_EQ(apply_affine(e12, 2.0, 1.0), (CMatrix{{1, 2}, {0, 1}}));
  EXPECT_EQ(CMatrix::identity(2).pad(1).n(), 3u);
  EXPECT_EQ(CMatrix::identity(2).pad(1)(2, 2), cplx(0));
  EXPECT_NEAR(std::abs(determinant(CMatrix{{1, 2}, {3, 4}}) - cplx(-2)), 0.0, 1e-14);
}

TEST(CMatrix, CommutatorHasZeroTrace) {
  for (std::size_t k = 0; k < 20; ++k) {
    const CMatrix a = random_matrix(5, derive_seed(1, k), kFamilies[k % 5]);
    const CMatrix b = random_matrix(5, derive_seed(2, k), Family::Dense);
    const CMatrix c = commutator(a, b);
    EXPECT_LE(std::abs(c.trace()), 1e-12 * (1 + c.frobenius_norm()));
  }
}

TEST(Svd, MatchesEigenOracle) {
  for (std::size_t k = 0; k < 30; ++k) {
    const std::size_t n = 1 + k % 8;
    const CMatrix a = random_matrix(n, derive_seed(3, k), kFamilies[k % 5]);
    const auto got = singular_values(a);
    const Eigen::VectorXd ref = Eigen::JacobiSVD<Eigen::MatrixXcd>(to_eigen(a)).singularValues();
    ASSERT_EQ(got.size(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], ref[i], 1e-11 * (1 + ref[0])) << "k=" << k;
    EXPECT_TRUE(std::is_sorted(got.rbegin(), got.rend()));
  }
}

TEST(Svd, UnitarilyInvariant) {
  for (std::size_t k = 0; k < 10; ++k) {
    const std::size_t n = 2 + k % 6;
    const CMatrix a = random_matrix(n, derive_seed(4, k), Family::Dense);
    const CMatrix u = random_unitary(n, derive_seed(5, k)), v = random_unitary(n, derive_seed(6, k));
    const auto s1 = singular_values(a), s2 = singular_values(u * a * v);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s1[i], s2[i], 1e-9);
  }
}

TEST(Svd, RankOneNilpotentHasOneSingularValue) {
  const auto x = random_rank_one_nilpotent(6, 9);
  const auto s = singular_values(x.matrix());
  EXPECT_NEAR(s[0], x.weight(), 1e-12 * x.weight());
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LE(s[i], 1e-12 * x.weight());
  EXPECT_LE((x.matrix() * x.matrix()).max_abs(), 1e-12 * x.weight());
}

TEST(Svd, SminIsOneLipschitz) {
  Rng rng(12);
  for (std::size_t k = 0; k < 10; ++k) {
    const CMatrix a = random_matrix(4, derive_seed(7, k), kFamilies[k % 5]);
    for (int j = 0; j < 10; ++j) {
      const cplx z1 = complex_gaussian(rng), z2 = z1 + 0.3 * complex_gaussian(rng);
      EXPECT_LE(std::abs(smin_shift(a, z1) - smin_shift(a, z2)), std::abs(z1 - z2) + 1e-9);
    }
  }
}

TEST(Svd, NormalSminIsDistanceToSpectrum) {
  Rng rng(13);
  for (std::size_t k = 0; k < 10; ++k) {
    const std::size_t n = 3 + k % 4;
    const auto lam = gaussian_vector(n, rng);
    const CMatrix a = conjugate_by(random_unitary(n, rng), CMatrix::diagonal(lam));
    for (int j = 0; j < 10; ++j) {
      const cplx z = 1.5 * complex_gaussian(rng);
      double d = INFINITY;
      for (cplx l : lam) d = std::min(d, std::abs(z - l));
      EXPECT_NEAR(smin_shift(a, z), d, 1e-8);
    }
  }
}

TEST(Svd, SpectralNorm) {
  EXPECT_DOUBLE_EQ(spectral_norm(CMatrix::zero(3)), 0.0);
  EXPECT_NEAR(spectral_norm(CMatrix{{3, 0}, {0, cplx(0, -4)}}), 4.0, 1e-14);
}

TEST(Schur, FactorisationAndTriangularity) {
  for (std::size_t k = 0; k < 25; ++k) {
    const std::size_t n = 2 + k % 6;
    const CMatrix a = random_matrix(n, derive_seed(8, k), kFamilies[k % 5]);
    const auto s = schur(a);
    const double scale = 1 + a.frobenius_norm();
    EXPECT_LE((s.q * s.t * s.q.adjoint() - a).max_abs(), 1e-12 * scale);
    EXPECT_LE((s.q * s.q.adjoint() - CMatrix::identity(n)).max_abs(), 1e-12);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(s.t(i, j), cplx(0));
  }
}

TEST(Schur, SwapPreservesFactorisation) {
  const CMatrix a = random_matrix(5, 21, Family::Triangular);
  auto s = schur(a);
  const cplx d0 = s.t(1, 1), d1 = s.t(2, 2);
  schur_swap(s, 1);
  EXPECT_NEAR(std::abs(s.t(1, 1) - d1), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.t(2, 2) - d0), 0.0, 1e-12);
  EXPECT_LE(std::abs(s.t(2, 1)), 1e-14);
  EXPECT_LE((s.q * s.t * s.q.adjoint() - a).max_abs(), 1e-12 * (1 + a.frobenius_norm()));
}

TEST(Schur, SwapOfEqualDiagonalWithZeroCoupling) {
  const CMatrix a = CMatrix::diagonal(std::vector<cplx>{1, 1, 2});
  SchurForm s{CMatrix::identity(3), a};
  schur_swap(s, 0);
  EXPECT_EQ(s.q * s.t * s.q.adjoint(), a);
}

TEST(Eigenvalues, MatchEigenOracle) {
  for (std::size_t k = 0; k < 30; ++k) {
    const std::size_t n = 2 + k % 6;
    const CMatrix a = random_matrix(n, derive_seed(9, k), kFamilies[k % 5]);
    const auto got = eigenvalues(a);
    const Eigen::VectorXcd ref = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(to_eigen(a), false).eigenvalues();
    std::vector<cplx> r(ref.data(), ref.data() + ref.size());
    // Nilpotent eigenvalues are ill-conditioned: error ~ eps^(1/n).
    const double tol = kFamilies[k % 5] == Family::Nilpotent ? 1e-2 : 1e-8;
    EXPECT_LE(multiset_distance(got.eigenvalues, r), tol * (1 + a.frobenius_norm())) << "k=" << k;
    EXPECT_LE(got.residual, 1e-10);
  }
}

TEST(Eigenvalues, AffineCovariance) {
  Rng rng(31);
  for (std::size_t k = 0; k < 10; ++k) {
    const CMatrix a = random_matrix(4, derive_seed(10, k), Family::Dense);
    const cplx mu = complex_gaussian(rng), nu = complex_gaussian(rng);
    auto expect = eigenvalues(a).eigenvalues;
    for (auto& z : expect) z = mu * z + nu;
    EXPECT_LE(multiset_distance(eigenvalues(apply_affine(a, mu, nu)).eigenvalues, expect), 1e-7);
  }
}

TEST(Structure, NormalityAndClusters) {
  EXPECT_TRUE(is_normal(random_matrix(4, 1, Family::Normal)));
  EXPECT_FALSE(is_normal(CMatrix::unit(3, 0, 1)));
  const std::vector<cplx> ev{1, 1 + 1e-12, -1, cplx(0, 2)};
  const auto lab = eigenvalue_clusters(ev, 1e-8);
  EXPECT_EQ(lab, (std::vector<std::size_t>{0, 0, 1, 2}));
  const auto two = eigenvalues(random_matrix(5, 3, Family::TwoEigNormal));
  EXPECT_EQ(distinct_eigenvalue_count(two), 2u);
  EXPECT_TRUE(eigenvalues_collinear(two));
  EXPECT_FALSE(eigenvalues_collinear(eigenvalues(CMatrix::diagonal(std::vector<cplx>{0, 1, cplx(0, 1)}))));
  EXPECT_TRUE(eigenvalues_collinear(eigenvalues(CMatrix::diagonal(std::vector<cplx>{2, 1, -1}))));
}

TEST(Random, DeterministicAndWellFormed) {
  EXPECT_EQ(random_matrix(4, 99, Family::Dense), random_matrix(4, 99, Family::Dense));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  const CMatrix u = random_unitary(6, 4);
  EXPECT_LE((u * u.adjoint() - CMatrix::identity(6)).max_abs(), 1e-13);
  const auto x = random_rank_one_nilpotent(5, 8);
  EXPECT_LE(std::abs(dot(x.y, x.x)), 1e-12 * x.weight());
  EXPECT_THROW(random_rank_one_nilpotent(1, 0), DimensionError);
  EXPECT_THROW(RankOneNilpotent(std::vector<cplx>{1, 0}, std::vector<cplx>{1, 0}), InvalidTarget);
  EXPECT_EQ(family_from_string("two-eig-normal"), Family::TwoEigNormal);
  EXPECT_THROW(family_from_string("hermitian"), FormatError);
}
