#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lieps/kernels.hpp"
#include "lieps/linalg.hpp"
#include "lieps/random.hpp"

using namespace lieps;

namespace {

std::vector<const kernels::Table*> simd_tables() {
  auto all = kernels::available();
  all.erase(all.begin());
  return all;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

}  // namespace

TEST(Kernels, ScalarIsAlwaysAvailableAndFirst) {
  const auto all = kernels::available();
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(all.front(), &kernels::scalar());
  EXPECT_EQ(all.front()->name, "scalar");
}

TEST(Kernels, ScalarReferenceValues) {
  const auto& k = kernels::scalar();
  const std::vector<cplx> x{{1, 2}, {3, -1}, {0, 1}};
  const std::vector<cplx> y{{2, 0}, {1, 1}, {-1, 4}};
  // conj(1+2i)*2 + conj(3-i)(1+i) + conj(i)(-1+4i) = (2-4i) + (2+4i) + (4+i)
  EXPECT_EQ(k.dotc(x.data(), y.data(), 3), cplx(8, 1));
  EXPECT_EQ(k.norm2(x.data(), 3), 16.0);
  auto z = y;
  k.axpy({0, 1}, x.data(), z.data(), 3);
  EXPECT_EQ(z[0], cplx(0, 1));
  EXPECT_EQ(z[1], cplx(2, 4));
  EXPECT_EQ(z[2], cplx(-2, 4));
}

TEST(Kernels, SimdMatchesScalarOnAllLengths) {
  const auto tables = simd_tables();
  if (tables.empty()) GTEST_SKIP() << "no SIMD kernels on this machine";
  const auto& ref = kernels::scalar();
  Rng rng(11);
  for (const auto* t : tables) {
    SCOPED_TRACE(std::string(t->name));
    for (std::size_t n = 0; n <= 37; ++n) {
      const auto x = gaussian_vector(n, rng);
      const auto y = gaussian_vector(n, rng);
      EXPECT_LE(rel(t->dotc(x.data(), y.data(), n), ref.dotc(x.data(), y.data(), n)), 1e-14) << n;
      EXPECT_NEAR(t->norm2(x.data(), n), ref.norm2(x.data(), n), 1e-14 * (1 + ref.norm2(x.data(), n)));

      const cplx a = complex_gaussian(rng);
      auto y1 = y, y2 = y;
      ref.axpy(a, x.data(), y1.data(), n);
      t->axpy(a, x.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_LE(rel(y2[i], y1[i]), 1e-14);

      const double th = 0.7;
      const cplx s = std::polar(std::sin(th), 0.3);
      auto xa = x, ya = y, xb = x, yb = y;
      ref.rot(xa.data(), ya.data(), n, std::cos(th), s);
      t->rot(xb.data(), yb.data(), n, std::cos(th), s);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_LE(rel(xb[i], xa[i]), 1e-14);
        EXPECT_LE(rel(yb[i], ya[i]), 1e-14);
      }
    }
  }
}

TEST(Kernels, RotationIsUnitary) {
  Rng rng(5);
  for (const auto* t : kernels::available()) {
    auto x = gaussian_vector(9, rng), y = gaussian_vector(9, rng);
    const double before = t->norm2(x.data(), 9) + t->norm2(y.data(), 9);
    const cplx s = std::polar(0.6, -1.1);
    t->rot(x.data(), y.data(), 9, 0.8, s);
    EXPECT_NEAR(t->norm2(x.data(), 9) + t->norm2(y.data(), 9), before, 1e-12 * before) << t->name;
  }
}

TEST(Kernels, SingularValuesAgreeAcrossTables) {
  const auto tables = simd_tables();
  if (tables.empty()) GTEST_SKIP() << "no SIMD kernels on this machine";
  for (std::size_t n : {1, 2, 3, 5, 8, 13}) {
    const CMatrix a = random_matrix(n, derive_seed(3, n), Family::Dense);
    const auto ref = singular_values(a, {}, kernels::scalar());
    for (const auto* t : tables) {
      const auto got = singular_values(a, {}, *t);
      ASSERT_EQ(got.size(), ref.size());
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], ref[i], 1e-12 * (1 + ref[0])) << t->name << " n=" << n;
    }
  }
}

TEST(Kernels, SminShiftAgreesAcrossTables) {
  const auto tables = simd_tables();
  if (tables.empty()) GTEST_SKIP() << "no SIMD kernels on this machine";
  const CMatrix a = random_matrix(6, 77, Family::Nilpotent);
  for (cplx z : {cplx(0, 0), cplx(0.3, -0.2), cplx(2, 1)}) {
    const double ref = smin_shift(a, z, {}, kernels::scalar());
    for (const auto* t : tables) EXPECT_NEAR(smin_shift(a, z, {}, *t), ref, 1e-12);
  }
}
