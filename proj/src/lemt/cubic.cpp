#include "lieps/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/pseudo.hpp"

namespace lieps::lemt {
namespace {

// Solves the small Vandermonde system sum_k c_k x_i^k = y_i.
template <std::size_t N>
std::array<double, N> vandermonde_solve(const std::array<double, N>& x, std::array<double, N> y) {
  std::array<std::array<double, N>, N> m{};
  for (std::size_t i = 0; i < N; ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < N; ++k, p *= x[i]) m[i][k] = p;
  }
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    std::swap(m[col], m[piv]);
    std::swap(y[col], y[piv]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < N; ++k) m[r][k] -= f * m[col][k];
      y[r] -= f * y[col];
    }
  }
  std::array<double, N> c{};
  for (std::size_t i = N; i-- > 0;) {
    double s = y[i];
    for (std::size_t k = i + 1; k < N; ++k) s -= m[i][k] * c[k];
    c[i] = s / m[i][i];
  }
  return c;
}

// Degree-6 interpolant through g on t in {0, +-1, +-2, +-3}, split into
// the even part (cubic in s = t^2) and odd part (t times a quadratic in s).
template <class G>
std::array<double, 7> interpolate_sextic(G g) {
  std::array<double, 4> even_vals{};
  std::array<double, 3> odd_vals{};
  even_vals[0] = g(0.0);
  for (int k = 1; k <= 3; ++k) {
    const double plus = g(k), minus = g(-k);
    even_vals[static_cast<std::size_t>(k)] = 0.5 * (plus + minus);
    odd_vals[static_cast<std::size_t>(k - 1)] = 0.5 * (plus - minus) / k;
  }
  const auto ev = vandermonde_solve<4>({0.0, 1.0, 4.0, 9.0}, even_vals);
  const auto od = vandermonde_solve<3>({1.0, 4.0, 9.0}, odd_vals);
  std::array<double, 7> c{};
  for (std::size_t k = 0; k < 4; ++k) c[2 * k] = ev[k];
  for (std::size_t k = 0; k < 3; ++k) c[2 * k + 1] = od[k];
  return c;
}

template <std::size_t N>
double horner(const std::array<double, N>& c, double t) {
  double v = 0.0;
  for (std::size_t k = N; k-- > 0;) v = v * t + c[k];
  return v;
}

template <std::size_t N>
double abs_sum(const std::array<double, N>& c, double t) {
  double v = 0.0;
  for (std::size_t k = N; k-- > 0;) v = v * std::abs(t) + std::abs(c[k]);
  return v;
}

template <std::size_t M, std::size_t N>
std::array<double, M> truncate(const std::array<double, N>& c) {
  std::array<double, M> out{};
  std::copy_n(c.begin(), M, out.begin());
  return out;
}

}  // namespace

CharpolyValues CubicCoeffs::at(double t) const {
  return {horner(p2, t), horner(p1, t), horner(p0, t)};
}

double CubicCoeffs::scale() const {
  double s = 0.0;
  for (double v : p2) s = std::max(s, std::abs(v));
  for (double v : p1) s = std::max(s, std::abs(v));
  for (double v : p0) s = std::max(s, std::abs(v));
  return s;
}

CharpolyValues gram_charpoly_at(const CMatrix& c, double t) {
  if (c.n() != 3) throw DimensionError("gram_charpoly_at: expected a 3x3 matrix");
  CMatrix s = c;
  for (std::size_t i = 0; i < 3; ++i) s(i, i) -= t;
  const CMatrix m = s.adjoint() * s;
  auto re = [&](std::size_t i, std::size_t j) { return m(i, j).real(); };
  double minors = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) minors += re(i, i) * re(j, j) - std::norm(m(i, j));
  }
  return {-(re(0, 0) + re(1, 1) + re(2, 2)), minors, -determinant(m).real()};
}

CubicCoeffs extract_polynomials(const CMatrix& c) {
  if (c.n() != 3) throw DimensionError("extract_polynomials: expected a 3x3 matrix");
  CubicCoeffs out;
  if (std::abs(c.trace()) > 1e-9) out.warnings.emplace_back("trace is not zero");
  if (singular_values(c).back() > 1e-9) out.warnings.emplace_back("block has full rank");

  std::array<CharpolyValues, 7> vals{};
  auto node = [](double t) { return static_cast<std::size_t>(t + 3.0); };
  for (int k = -3; k <= 3; ++k) vals[node(k)] = gram_charpoly_at(c, k);
  out.p2 = truncate<3>(interpolate_sextic([&](double t) { return vals[node(t)].p2; }));
  out.p1 = truncate<5>(interpolate_sextic([&](double t) { return vals[node(t)].p1; }));
  out.p0 = interpolate_sextic([&](double t) { return vals[node(t)].p0; });
  out.odd_linear_a = out.p1[1];

  for (double t : {0.5, -1.5, 2.5}) {
    const CharpolyValues direct = gram_charpoly_at(c, t);
    const CharpolyValues fit = out.at(t);
    const double r2 = std::abs(direct.p2 - fit.p2) / std::max(1.0, abs_sum(out.p2, t));
    const double r1 = std::abs(direct.p1 - fit.p1) / std::max(1.0, abs_sum(out.p1, t));
    const double r0 = std::abs(direct.p0 - fit.p0) / std::max(1.0, abs_sum(out.p0, t));
    if (std::max({r2, r1, r0}) > 1e-7) {
      throw NumericalError("extract_polynomials: interpolant fails the check at t = " +
                           std::to_string(t));
    }
  }
  return out;
}

bool lemt_applicable(const CubicCoeffs& k, double tol) {
  const bool even = std::abs(k.p2[1]) <= tol && std::abs(k.p0[1]) <= tol &&
                    std::abs(k.p0[3]) <= tol && std::abs(k.p0[5]) <= tol;
  return even && std::abs(k.p1[3]) <= tol && std::abs(k.odd_linear_a) > tol;
}

std::optional<Certificate> asymmetry_certificate(const CMatrix& c, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ToleranceError("asymmetry_certificate: eps must be positive");
  const CubicCoeffs coeffs = extract_polynomials(c);
  Certificate cert;
  cert.warnings = coeffs.warnings;
  const bool applicable = lemt_applicable(coeffs, 1e-8 * std::max(1.0, coeffs.scale()));
  if (!applicable) cert.warnings.emplace_back("parity hypothesis does not hold");

  std::vector<bool> orientations;
  if (applicable) {
    orientations.push_back(coeffs.odd_linear_a > 0.0);
  } else {
    orientations = {false, true};
  }

  const double s1 = spectral_norm(c);
  const double tol = std::max(1e-14, 1e-12 * (s1 + eps));
  std::optional<Certificate> best;
  for (bool flipped : orientations) {
    const double sgn = flipped ? -1.0 : 1.0;
    const auto hit = pseudo::boundary_ray(c, eps, flipped ? std::numbers::pi : 0.0, tol);
    if (hit.empty || hit.t <= 0.0) continue;
    Certificate cand = cert;
    cand.flipped = flipped;
    cand.t0 = hit.t;
    cand.margin = eps - smin_shift(c, cplx(-sgn * hit.t));
    if (!(cand.margin > 0.0)) continue;

    // t0 itself sits on the boundary; push both points slightly outward so
    // that -z is strictly outside while z stays inside.
    for (double eta : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 5e-2}) {
      const double t = hit.t * (1.0 + eta) + eta * eps;
      const cplx z(-sgn * t);
      const double m = std::min(eps - smin_shift(c, z), smin_shift(c, -z) - eps);
      if (m > cand.witness_margin) {
        cand.witness_margin = m;
        cand.witness = z;
      }
    }
    if (!(cand.witness_margin > 0.0)) continue;
    if (!best || cand.witness_margin > best->witness_margin) best = std::move(cand);
  }
  return best;
}

}  // namespace lieps::lemt
