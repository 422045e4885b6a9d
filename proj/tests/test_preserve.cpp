#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/preserve.hpp"
#include "lieps/pseudo.hpp"
#include "lieps/random.hpp"

using namespace lieps;
using namespace lieps::preserve;

namespace {

CanonicalMap identity_map(std::size_t n) {
  CanonicalMap m;
  m.u = CMatrix::identity(n);
  return m;
}

}  // namespace

TEST(Radial, ParsingAndValues) {
  EXPECT_EQ(radial_from_string("frobenius")(CMatrix{{3, 0}, {0, 4}}), 5.0);
  EXPECT_NEAR(radial_from_string("s1")(CMatrix{{3, 0}, {0, cplx(0, 4)}}), 4.0, 1e-14);
  EXPECT_EQ(radial_from_string("specrad")(CMatrix::unit(2, 0, 1)), 0.0);
  EXPECT_NEAR(radial_from_string("reps:0.5")(CMatrix::unit(2, 0, 1)), std::sqrt(0.75), 1e-9);
  EXPECT_THROW(radial_from_string("reps:-1"), FormatError);
  EXPECT_THROW(radial_from_string("trace"), FormatError);
}

TEST(Radial, PropertySuite) {
  const auto x = random_rank_one_nilpotent(3, 4);
  const std::vector<double> grid{0.5, 1.0, 1.5, 2.0};
  for (const auto& f : {RadialFunction::frobenius(), RadialFunction::largest_singular_value(),
                        RadialFunction::pseudospectral_radius(0.5)}) {
    EXPECT_TRUE(check_P1(f, 3, 5, 1, f.accuracy > 0 ? 2 * f.accuracy : 1e-12).pass) << f.name;
    EXPECT_TRUE(check_P2(f, 3, 5, 2).pass) << f.name;
    EXPECT_TRUE(check_P3(f, x, grid).pass) << f.name;
  }
  const auto rho = RadialFunction::spectral_radius();
  const auto p2 = check_P2(rho, 3, 5, 2);
  EXPECT_FALSE(p2.pass);
  EXPECT_TRUE(p2.counterexample.has_value());
  // E_12 has exactly zero computed eigenvalues along the whole ray.
  const RankOneNilpotent e12(std::vector<cplx>{1, 0, 0}, std::vector<cplx>{0, 1, 0});
  EXPECT_FALSE(check_P3(rho, e12, grid).pass);
}

TEST(CanonicalMapTest, TauVariants) {
  const CMatrix a{{1, cplx(0, 2)}, {3, 4}};
  EXPECT_EQ(apply_tau(Tau::Identity, a), a);
  EXPECT_EQ(apply_tau(Tau::Conjugate, a), a.conj());
  EXPECT_EQ(apply_tau(Tau::Transpose, a), a.transpose());
  EXPECT_EQ(apply_tau(Tau::Adjoint, a), a.adjoint());
  EXPECT_EQ(apply_tau(Tau::ITranspose, a), cplx(0, 1) * a.transpose());
  for (Tau t : {Tau::Identity, Tau::Conjugate, Tau::Transpose, Tau::Adjoint, Tau::ITranspose}) {
    EXPECT_EQ(tau_from_string(to_string(t)), t);
  }
  EXPECT_THROW(tau_from_string("inverse"), FormatError);
}

TEST(CanonicalMapTest, ApplyMapChecks) {
  CanonicalMap m = identity_map(3);
  m.scalars.mu = cplx(0, 1);
  m.scalars.nu = 2.0;
  const CMatrix a = random_matrix(3, 5, Family::Dense);
  EXPECT_EQ(apply_map(m, a), apply_affine(a, cplx(0, 1), 2.0));
  EXPECT_THROW(apply_map(m, CMatrix::identity(4)), DimensionError);
  m.scalars.mu = 2.0;
  EXPECT_THROW(apply_map(m, a), InvalidTarget);
  m.scalars.mu = 1.0;
  m.u = 2.0 * CMatrix::identity(3);
  EXPECT_THROW(apply_map(m, a), InvalidTarget);
}

TEST(CanonicalMapTest, ExceptionalActions) {
  const CMatrix t = CMatrix::diagonal(std::vector<cplx>{1, 1, -1});
  const CMatrix a{{1, 2, 0}, {0, 1, 0}, {0, 0, 3}};
  CanonicalMap m = identity_map(3);
  m.exceptional.kind = Exceptional::Kind::TwoEigNormal;
  m.exceptional.action = Exceptional::Action::SignFlip;
  EXPECT_EQ(apply_map(m, t), -t);
  EXPECT_EQ(apply_map(m, a), a);
  m.exceptional.action = Exceptional::Action::AdjointSwap;
  const CMatrix ti = CMatrix::diagonal(std::vector<cplx>{cplx(0, 1), cplx(0, 1), -1});
  EXPECT_EQ(apply_map(m, ti), ti.adjoint());
}

TEST(CanonicalMapTest, RandomScalarRulesAreDeterministic) {
  ScalarRule r;
  r.kind = ScalarRule::Kind::RandomPerMatrix;
  r.seed = 4;
  const CMatrix a = random_matrix(3, 1, Family::Dense), b = random_matrix(3, 2, Family::Dense);
  EXPECT_EQ(r(a), r(a));
  EXPECT_NE(r(a).first, r(b).first);
  EXPECT_NEAR(std::abs(r(a).first), 1.0, 1e-14);
}

TEST(LieInvariance, IdentityMapHasZeroDeviation) {
  PairOptions po;
  po.n_pairs = 10;
  po.dims = {3};
  const auto rep = verify_lie_invariance(identity_map(3), RadialFunction::pseudospectral_radius(0.5), 0.0, po);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.max_deviation, 0.0);
  EXPECT_EQ(rep.pairs, 10u);
}

TEST(LieInvariance, CanonicalMapsPreserveRadius) {
  for (Tau tau : {Tau::Identity, Tau::Conjugate, Tau::Transpose, Tau::Adjoint}) {
    CanonicalMap m;
    m.u = random_unitary(3, 7);
    m.tau = tau;
    m.scalars.kind = ScalarRule::Kind::RandomPerMatrix;
    m.scalars.seed = 8;
    PairOptions po;
    po.n_pairs = 6;
    po.dims = {3};
    const auto rep = verify_lie_invariance(m, RadialFunction::pseudospectral_radius(1.0), 2e-10, po);
    EXPECT_TRUE(rep.pass) << to_string(tau) << " " << rep.max_deviation;
  }
}

TEST(LieInvariance, NonCanonicalMapIsCaught) {
  // Taking the adjoint on only part of the matrices breaks invariance.
  CanonicalMap m = identity_map(3);
  m.exceptional.kind = Exceptional::Kind::Custom;
  m.exceptional.action = Exceptional::Action::AdjointSwap;
  m.exceptional.custom = [](const CMatrix& a) { return a(0, 0).real() > 0; };
  PairOptions po;
  po.n_pairs = 8;
  po.dims = {3};
  const auto rep = verify_lie_invariance(m, RadialFunction::frobenius(), 1e-12, po);
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.counterexample.has_value());
  EXPECT_GT(rep.max_deviation, 1e-3);
}

TEST(SigmaInvariance, FlipOnTwoEigNormalsPreserves) {
  CanonicalMap m;
  m.u = random_unitary(3, 9);
  m.tau = Tau::ITranspose;
  m.scalars.kind = ScalarRule::Kind::RandomShift;
  m.scalars.mu = -1.0;
  m.scalars.seed = 3;
  m.exceptional.kind = Exceptional::Kind::TwoEigNormal;
  SigmaOptions so;
  so.samples = 200;
  so.pairs.n_pairs = 6;
  so.pairs.dims = {3};
  const auto rep = verify_sigma_invariance(m, so);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.disagreements, 0u);
  EXPECT_EQ(rep.patterns.size(), 6u);
  EXPECT_EQ(rep.patterns[1], Membership::One);
  EXPECT_EQ(rep.patterns[2], Membership::Both);
}

TEST(SigmaInvariance, FlipOnANonTwoEigMatrixIsDetected) {
  const CMatrix d = CMatrix::diagonal(std::vector<cplx>{2, 1, -1});
  const CMatrix x = CMatrix::outer(std::vector<cplx>{std::numbers::sqrt2, 1, 1}, std::vector<cplx>{0, -1, 1});
  CanonicalMap m = identity_map(3);
  m.exceptional.kind = Exceptional::Kind::Custom;
  m.exceptional.custom = [d](const CMatrix& a) { return (a - d).max_abs() < 1e-12; };
  SigmaOptions so;
  so.pairs.n_pairs = 0;
  so.extra_pairs = {{d, x}};
  const auto rep = verify_sigma_invariance(m, so);
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.counterexample.has_value());
  EXPECT_EQ(rep.counterexample->pair, 0u);
}

TEST(SigmaInvariance, RejectsMapsOutsideTheFamily) {
  CanonicalMap m = identity_map(3);
  m.tau = Tau::Conjugate;
  EXPECT_THROW(verify_sigma_invariance(m, {}), InvalidTarget);
  m.tau = Tau::Identity;
  m.scalars.mu = cplx(0, 1);
  EXPECT_THROW(verify_sigma_invariance(m, {}), InvalidTarget);
  m.scalars.mu = 1.0;
  m.scalars.kind = ScalarRule::Kind::RandomPerMatrix;
  EXPECT_THROW(verify_sigma_invariance(m, {}), InvalidTarget);
  m.scalars.kind = ScalarRule::Kind::Constant;
  m.exceptional.kind = Exceptional::Kind::TwoEigNormal;
  m.exceptional.action = Exceptional::Action::AdjointSwap;
  EXPECT_THROW(verify_sigma_invariance(m, {}), InvalidTarget);
}

TEST(SigmaInvariance, SecondBracketFixtureAgainstStatedDisks) {
  // [B2, C] with B2 = E22+E23+E32+E33 and C = E11 + e^{i pi/6} E22. The
  // computed spectrum is {0, +-e^{2 pi i/3}}; the stated centres
  // +-e^{-2 pi i/3} are their conjugates. The grid oracle is the reference
  // and the stated set is only compared, not asserted.
  CMatrix b2(3), c(3);
  b2(1, 1) = b2(1, 2) = b2(2, 1) = b2(2, 2) = 1.0;
  c(0, 0) = 1.0;
  c(1, 1) = std::polar(1.0, std::numbers::pi / 6);
  const CMatrix k = commutator(b2, c);
  EXPECT_TRUE(is_normal(k));
  const cplx w = std::polar(1.0, 2 * std::numbers::pi / 3);
  const cplx computed[] = {w, -w, 0.0};
  const cplx stated[] = {std::conj(w), -std::conj(w), 0.0};
  const double eps = 0.25;
  pseudo::GridSpec g;
  g.half_width = 1.5;
  g.resolution = 61;
  const auto s = pseudo::grid(k, eps, g);
  std::size_t computed_mismatch = 0, stated_mismatch = 0;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (std::abs(s.smin_values[i] - eps) <= 1e-6) continue;
    auto in = [&](const cplx* ctr) {
      double d = INFINITY;
      for (int j = 0; j < 3; ++j) d = std::min(d, std::abs(s.points[i] - ctr[j]));
      return d < eps;
    };
    computed_mismatch += in(computed) != s.membership[i];
    stated_mismatch += in(stated) != s.membership[i];
  }
  EXPECT_EQ(computed_mismatch, 0u);
  RecordProperty("stated_set_mismatches", static_cast<int>(stated_mismatch));
  std::printf("[B2,C]: grid disagrees with the stated disks at %zu of %zu points\n", stated_mismatch,
              s.points.size());
}

TEST(SpectrumMatch, ModesAndErrors) {
  const std::vector<cplx> l{0, 1, cplx(0, 1)};
  const cplx mu = std::polar(1.0, 0.4), nu(1, -2);
  std::vector<cplx> g, gc;
  for (cplx z : l) {
    g.push_back(mu * z + nu);
    gc.push_back(std::conj(mu * z + nu));
  }
  const auto lin = match_spectra(l, g);
  EXPECT_EQ(lin.mode, MatchMode::Linear);
  EXPECT_NEAR(std::abs(lin.mu - mu), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(lin.nu - nu), 0.0, 1e-12);
  EXPECT_EQ(match_spectra(l, gc).mode, MatchMode::ConjugateLinear);

  const std::vector<cplx> line{0, 1, 3};
  std::vector<cplx> gl;
  for (cplx z : line) gl.push_back(mu * z + nu);
  EXPECT_EQ(match_spectra(line, gl).mode, MatchMode::Both);

  EXPECT_THROW(match_spectra(l, {0, 2, cplx(0, 2)}), NoIsometry);
  EXPECT_THROW(match_spectra(l, {0, 1}), DimensionError);
  EXPECT_TRUE(check_pairwise_isometry(l, g));
  EXPECT_FALSE(check_pairwise_isometry(l, {0, 2, cplx(0, 2)}));
}
