#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "lieps/classify.hpp"
#include "lieps/cubic.hpp"
#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/pseudo.hpp"
#include "lieps/random.hpp"

using namespace lieps;
using namespace lieps::classify;

namespace {

CMatrix diag(std::vector<cplx> d) { return CMatrix::diagonal(d); }

CMatrix e(std::size_t n, std::size_t i, std::size_t j) { return CMatrix::unit(n, i, j); }

void expect_certified(const CMatrix& a, const Witness& w) {
  const CMatrix c = commutator(a, w.b.matrix());
  const auto& cert = w.certificate;
  EXPECT_GT(cert.margin, 1e-6);
  EXPECT_LE(smin_shift(c, cert.z), cert.epsilon - cert.margin * 0.999);
  EXPECT_GE(smin_shift(c, -cert.z), cert.epsilon + cert.margin * 0.999);
  EXPECT_TRUE(pseudo::member(c, cert.z, cert.epsilon));
  EXPECT_FALSE(pseudo::member(c, -cert.z, cert.epsilon));
}

}  // namespace

TEST(Classify, DirectVerdicts) {
  EXPECT_TRUE(direct_two_eig_normal(diag({1, 1, -1})));
  EXPECT_TRUE(direct_two_eig_normal(CMatrix::identity(4)));
  EXPECT_TRUE(direct_two_eig_normal(random_matrix(5, 1, Family::TwoEigNormal)));
  EXPECT_FALSE(direct_two_eig_normal(diag({2, 1, -1})));
  EXPECT_FALSE(direct_two_eig_normal(e(3, 0, 1)));
  EXPECT_THROW(direct_two_eig_normal(CMatrix::identity(2)), DimensionError);
}

TEST(Classify, CaseNames) {
  EXPECT_EQ(to_string(CaseTag::NonNormal2a), "NonNormal-2a");
  EXPECT_EQ(to_string(CaseTag::TwoEigNormal), "TwoEigNormal");
}

TEST(Classify, PaperWitnessForThreeEigenvalues) {
  const CMatrix a = diag({2, 1, -1});
  const auto w = construct_witness(a);
  EXPECT_EQ(w.route, CaseTag::NormalManyEig);
  EXPECT_EQ(w.certificate.method, "cubic");
  // x = (sqrt2, 1, 1), y = (0, -1, 1).
  EXPECT_NEAR(std::abs(w.b.x[0] - std::numbers::sqrt2), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(w.b.x[1] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(w.b.x[2] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(w.b.y[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(w.b.y[1] + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(w.b.y[2] - 1.0), 0.0, 1e-12);
  expect_certified(a, w);
  // The resulting commutator is the a = 2 instance of the lemma's first case.
  const auto c = lemt::extract_polynomials(commutator(a, w.b.matrix()));
  EXPECT_NEAR(c.p1[1], -48, 1e-9);
}

TEST(Classify, WitnessRoutes) {
  struct Case {
    CMatrix a;
    CaseTag route;
  };
  const Case cases[] = {
      {e(3, 0, 1), CaseTag::NonNormal2bi},
      {CMatrix::identity(3) + e(3, 0, 1), CaseTag::NonNormal2bi},
      {e(3, 0, 0) + e(3, 0, 1), CaseTag::NonNormal2bii},
      {diag({0, 1, cplx(0, 1)}), CaseTag::NormalManyEig},
  };
  for (const auto& c : cases) {
    const auto w = construct_witness(c.a);
    EXPECT_EQ(w.route, c.route) << to_string(w.route);
    expect_certified(c.a, w);
  }
}

TEST(Classify, WitnessesOnRandomNonTwoEigMatrices) {
  for (std::size_t k = 0; k < 15; ++k) {
    const std::size_t n = 3 + k % 3;
    const Family fam = std::array{Family::Dense, Family::Normal, Family::Triangular, Family::Nilpotent}[k % 4];
    const CMatrix a = random_matrix(n, derive_seed(2, k), fam);
    WitnessOptions wo;
    wo.seed = derive_seed(3, k);
    const auto w = construct_witness(a, wo);
    EXPECT_NE(w.route, CaseTag::Fallback) << "k=" << k;
    expect_certified(a, w);
    if (w.certificate.method == "cubic") {
      const CMatrix c = commutator(a, w.b.matrix());
      EXPECT_LE(std::abs(c.trace()), 1e-10 * (1 + c.frobenius_norm()));
    }
  }
}

TEST(Classify, WitnessRejectsTwoEigNormal) {
  EXPECT_THROW(construct_witness(diag({1, 1, -1})), InvalidTarget);
  EXPECT_THROW(construct_witness(CMatrix::identity(2)), DimensionError);
}

TEST(Classify, TwoEigIdentityHoldsForAllProbes) {
  for (std::size_t k = 0; k < 5; ++k) {
    const std::size_t n = 3 + k % 3;
    const CMatrix a = random_matrix(n, derive_seed(4, k), Family::TwoEigNormal);
    for (std::size_t j = 0; j < 100; ++j) {
      const CMatrix b = random_rank_one_nilpotent(n, derive_seed(5, 100 * k + j)).matrix();
      EXPECT_TRUE(two_eig_symmetry_identity(a, b));
    }
    // The identity holds for arbitrary B as well.
    EXPECT_LE(two_eig_symmetry_residual(a, random_matrix(n, derive_seed(6, k), Family::Dense)), 1e-8);
  }
  EXPECT_THROW(two_eig_symmetry_residual(diag({2, 1, -1}), e(3, 0, 1)), InvalidTarget);
  EXPECT_THROW(two_eig_symmetry_residual(CMatrix::identity(3), e(3, 0, 1)), InvalidTarget);
}

TEST(Classify, ProbeFindsFalsifier) {
  const auto r = probe_two_eig_normal(diag({2, 1, -1}), 1.0);
  EXPECT_FALSE(r.symmetric);
  ASSERT_TRUE(r.falsifier.has_value());
  EXPECT_GT(r.margin, 1e-6);
  const CMatrix c = commutator(diag({2, 1, -1}), r.falsifier->matrix());
  EXPECT_TRUE(pseudo::member(c, r.z, 1.0));
  EXPECT_FALSE(pseudo::member(c, -r.z, 1.0));

  const auto s = probe_two_eig_normal(diag({1, 1, -1}), 1.0);
  EXPECT_TRUE(s.symmetric);
  EXPECT_EQ(s.probes_used, 16u);
}

TEST(Classify, VerdictDoesNotDependOnEps) {
  const CMatrix mats[] = {diag({2, 1, -1}), diag({1, 1, -1}), e(3, 0, 1), random_matrix(4, 8, Family::Dense),
                          random_matrix(4, 9, Family::TwoEigNormal)};
  for (const CMatrix& a : mats) {
    const bool expect = direct_two_eig_normal(a);
    for (double eps : {0.1, 1.0, 10.0}) {
      const auto rep = classify::classify(a, eps);
      EXPECT_EQ(rep.direct, expect);
      EXPECT_TRUE(rep.agree) << "eps=" << eps;
      EXPECT_EQ(rep.witness.has_value(), !expect);
    }
  }
}

TEST(Classify, ReportCaseTags) {
  EXPECT_EQ(classify::classify(diag({1, 1, -1}), 1.0).case_tag, CaseTag::TwoEigNormal);
  EXPECT_EQ(classify::classify(diag({2, 1, -1}), 1.0).case_tag, CaseTag::NormalManyEig);
  const auto rep = classify::classify(e(4, 0, 1), 1.0);
  EXPECT_EQ(rep.case_tag, CaseTag::NonNormal2bi);
  EXPECT_GT(rep.normality_residual, 0.1);
  EXPECT_FALSE(rep.near_tolerance);
}

TEST(Classify, DeterministicForFixedSeed) {
  const CMatrix a = random_matrix(4, 10, Family::Dense);
  ClassifyOptions o;
  o.probe.seed = 3;
  o.witness.seed = 4;
  const auto r1 = classify::classify(a, 1.0, o), r2 = classify::classify(a, 1.0, o);
  EXPECT_EQ(r1.probe.z, r2.probe.z);
  EXPECT_EQ(r1.witness->certificate.z, r2.witness->certificate.z);
  o.probe.threads = 3;
  EXPECT_EQ(classify::classify(a, 1.0, o).probe.z, r1.probe.z);
}
