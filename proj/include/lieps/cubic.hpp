#pragma once

// Characteristic polynomial of the Gram matrix of a shifted 3x3 block,
//   f(lambda, t) = det(lambda I - (C - tI)^* (C - tI))
//                = lambda^3 + p2(t) lambda^2 + p1(t) lambda + p0(t),
// and the asymmetry test built on the parity of p0, p1, p2 in t.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lieps/cmatrix.hpp"

namespace lieps::lemt {

struct CharpolyValues {
  double p2 = 0.0;
  double p1 = 0.0;
  double p0 = 0.0;
};

/// Coefficients are stored constant term first.
struct CubicCoeffs {
  std::array<double, 3> p2{};
  std::array<double, 5> p1{};
  std::array<double, 7> p0{};
  /// Coefficient of t in p1.
  double odd_linear_a = 0.0;
  /// Input-shape warnings (nonzero trace, full rank).
  std::vector<std::string> warnings;

  CharpolyValues at(double t) const;
  /// Largest coefficient magnitude, used to scale tolerances.
  double scale() const;
};

/// With M = (C - tI)^*(C - tI): p2 = -tr M, p1 = sum of principal 2x2 minors,
/// p0 = -det M. Throws DimensionError unless C is 3x3.
CharpolyValues gram_charpoly_at(const CMatrix& c, double t);

/// Interpolates p2, p1, p0 from gram_charpoly_at on t in {0, +-1, +-2, +-3}
/// and checks the fit at three further points. Throws NumericalError when the
/// check fails by more than 1e-7 relative.
CubicCoeffs extract_polynomials(const CMatrix& c);

/// p0 and p2 even, p1 with no t^3 term and a nonzero t term, all at absolute
/// tolerance tol.
bool lemt_applicable(const CubicCoeffs& coeffs, double tol = 1e-8);

struct Certificate {
  /// Largest t >= 0 with s_min(C - s t I) = eps, where s = -1 if flipped.
  double t0 = 0.0;
  /// True when the t -> -t orientation was applied (odd_linear_a > 0).
  bool flipped = false;
  /// eps - s_min(C + s t0 I): how deep the mirrored point lies inside.
  double margin = 0.0;
  /// A point z near -s t0 with z inside sigma_eps(C) and -z outside, both by
  /// witness_margin.
  cplx witness = 0.0;
  double witness_margin = 0.0;
  std::vector<std::string> warnings;
};

/// Returns no certificate when no positive crossing exists, the mirrored
/// point is not inside, or no strict witness can be placed next to t0.
std::optional<Certificate> asymmetry_certificate(const CMatrix& c, double eps);

}  // namespace lieps::lemt
