#include <bit>
#include <cmath>
#include <string>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/preserve.hpp"

namespace lieps::preserve {
namespace {

std::uint64_t hash_entries(const CMatrix& a) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<double>(a.n()));
  for (const cplx& e : a.data()) {
    mix(e.real());
    mix(e.imag());
  }
  return h;
}

}  // namespace

std::string_view to_string(Tau t) {
  switch (t) {
    case Tau::Identity: return "identity";
    case Tau::Conjugate: return "conjugate";
    case Tau::Transpose: return "transpose";
    case Tau::Adjoint: return "adjoint";
    case Tau::ITranspose: return "itranspose";
  }
  return "?";
}

Tau tau_from_string(std::string_view s) {
  for (Tau t : {Tau::Identity, Tau::Conjugate, Tau::Transpose, Tau::Adjoint, Tau::ITranspose}) {
    if (s == to_string(t)) return t;
  }
  throw FormatError("unknown tau '" + std::string(s) + "'");
}

std::string_view to_string(ScalarRule::Kind k) {
  switch (k) {
    case ScalarRule::Kind::Constant: return "constant";
    case ScalarRule::Kind::RandomPerMatrix: return "random";
    case ScalarRule::Kind::RandomShift: return "random-shift";
    case ScalarRule::Kind::Custom: return "custom";
  }
  return "?";
}

CMatrix apply_tau(Tau t, const CMatrix& a) {
  switch (t) {
    case Tau::Identity: return a;
    case Tau::Conjugate: return a.conj();
    case Tau::Transpose: return a.transpose();
    case Tau::Adjoint: return a.adjoint();
    case Tau::ITranspose: return cplx(0.0, 1.0) * a.transpose();
  }
  return a;
}

std::pair<cplx, cplx> ScalarRule::operator()(const CMatrix& a) const {
  switch (kind) {
    case Kind::Constant:
      return {mu, nu};
    case Kind::RandomPerMatrix: {
      Rng rng(derive_seed(seed, hash_entries(a)));
      const cplx m = unit_scalar(rng);
      return {m, complex_gaussian(rng)};
    }
    case Kind::RandomShift: {
      Rng rng(derive_seed(seed, hash_entries(a)));
      return {mu, complex_gaussian(rng)};
    }
    case Kind::Custom:
      if (!custom) throw InvalidTarget("ScalarRule: custom rule without a function");
      return custom(a);
  }
  return {mu, nu};
}

bool Exceptional::contains(const CMatrix& a) const {
  switch (kind) {
    case Kind::None:
      return false;
    case Kind::TwoEigNormal:
      return is_normal(a) && distinct_eigenvalue_count(eigenvalues(a)) <= 2;
    case Kind::Custom:
      if (!custom) throw InvalidTarget("Exceptional: custom predicate without a function");
      return custom(a);
  }
  return false;
}

CMatrix apply_map(const CanonicalMap& m, const CMatrix& a) {
  const std::size_t n = a.n();
  if (m.u.n() != n) throw DimensionError("apply_map: U and A differ in size");
  if ((m.u.adjoint() * m.u - CMatrix::identity(n)).max_abs() > 1e-10) {
    throw InvalidTarget("apply_map: U is not unitary");
  }
  auto [mu, nu] = m.scalars(a);
  if (std::abs(std::abs(mu) - 1.0) > 1e-10) {
    throw InvalidTarget("apply_map: |mu_A| = " + std::to_string(std::abs(mu)) + " is not 1");
  }
  CMatrix t = apply_tau(m.tau, a);
  if (m.exceptional.contains(a)) {
    if (m.exceptional.action == Exceptional::Action::AdjointSwap) {
      t = t.adjoint();
    } else {
      mu = -mu;
    }
  }
  return apply_affine(conjugate_by(m.u, t), mu, nu);
}

}  // namespace lieps::preserve
