#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/preserve.hpp"
#include "lieps/pseudo.hpp"

namespace lieps::preserve {
namespace {

constexpr Family kFamilies[] = {Family::Dense, Family::Normal, Family::TwoEigNormal,
                                Family::Triangular, Family::Nilpotent};

std::string describe(const CMatrix& a) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (std::size_t i = 0; i < a.n(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < a.n(); ++j) {
      os << (j ? ", " : "") << a(i, j).real() << (a(i, j).imag() < 0 ? "" : "+") << a(i, j).imag() << "i";
    }
  }
  os << "]";
  return os.str();
}

}  // namespace

RadialFunction RadialFunction::pseudospectral_radius(double eps, std::size_t n_rays, double tol) {
  std::ostringstream name;
  name.precision(17);
  name << "reps:" << eps;
  return {name.str(), [=](const CMatrix& a) { return pseudo::radius(a, eps, n_rays, tol).value; }, tol};
}

RadialFunction RadialFunction::frobenius() {
  return {"frobenius", [](const CMatrix& a) { return a.frobenius_norm(); }, 0.0};
}

RadialFunction RadialFunction::largest_singular_value() {
  return {"s1", [](const CMatrix& a) { return spectral_norm(a); }, 0.0};
}

RadialFunction RadialFunction::spectral_radius() {
  return {"specrad",
          [](const CMatrix& a) {
            double r = 0.0;
            for (const cplx& l : eigenvalues(a).eigenvalues) r = std::max(r, std::abs(l));
            return r;
          },
          0.0};
}

RadialFunction radial_from_string(const std::string& spec, std::size_t n_rays, double tol) {
  if (spec == "frobenius") return RadialFunction::frobenius();
  if (spec == "s1") return RadialFunction::largest_singular_value();
  if (spec == "specrad") return RadialFunction::spectral_radius();
  if (spec.rfind("reps:", 0) == 0) {
    std::size_t used = 0;
    double eps = 0.0;
    try {
      eps = std::stod(spec.substr(5), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != spec.size() - 5 || !(eps > 0.0)) {
      throw FormatError("bad radial function '" + spec + "': expected reps:<positive eps>");
    }
    return RadialFunction::pseudospectral_radius(eps, n_rays, tol);
  }
  throw FormatError("unknown radial function '" + spec + "'");
}

PropertyReport check_P1(const RadialFunction& f, std::size_t n, std::size_t trials, std::uint64_t seed,
                        double tol) {
  PropertyReport rep;
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(derive_seed(seed, k));
    const CMatrix a = random_matrix(n, rng, kFamilies[k % std::size(kFamilies)]);
    const cplx mu = unit_scalar(rng);
    const CMatrix u = random_unitary(n, rng);
    const double fa = f(a);
    const double dev = std::abs(f(mu * conjugate_by(u, a)) - fa) / (1.0 + fa);
    rep.margin = std::max(rep.margin, dev);
    ++rep.trials;
    if (dev > tol && rep.pass) {
      rep.pass = false;
      rep.counterexample = "A = " + describe(a) + ", deviation " + std::to_string(dev);
    }
  }
  return rep;
}

PropertyReport check_P2(const RadialFunction& f, std::size_t n, std::size_t trials, std::uint64_t seed) {
  PropertyReport rep;
  const CMatrix zero = CMatrix::zero(n);
  const double f0 = f(zero);
  rep.margin = std::numeric_limits<double>::infinity();
  if (!(f(zero) == f0)) {
    rep.pass = false;
    rep.counterexample = "f(0) is not reproducible";
  }
  for (std::size_t k = 0; k < trials; ++k) {
    const CMatrix a = k == 0 ? CMatrix::unit(n, 0, 1)
                             : random_matrix(n, derive_seed(seed, k), kFamilies[k % std::size(kFamilies)]);
    const double gap = f(a) - f0;
    rep.margin = std::min(rep.margin, gap);
    ++rep.trials;
    if (!(gap > 0.0) && rep.pass) {
      rep.pass = false;
      rep.counterexample = "f(A) = f(0) for A = " + describe(a);
    }
  }
  return rep;
}

PropertyReport check_P3(const RadialFunction& f, const RankOneNilpotent& x, std::vector<double> t_grid) {
  std::sort(t_grid.begin(), t_grid.end());
  t_grid.erase(std::remove_if(t_grid.begin(), t_grid.end(), [](double t) { return !(t > 0.0); }),
               t_grid.end());
  t_grid.insert(t_grid.begin(), 0.0);
  PropertyReport rep;
  rep.margin = std::numeric_limits<double>::infinity();
  const CMatrix xm = x.matrix();
  double prev = f(xm * cplx(0.0));
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double cur = f(xm * cplx(t_grid[i]));
    const double inc = cur - prev;
    rep.margin = std::min(rep.margin, inc);
    ++rep.trials;
    if (!(inc > 0.0) && rep.pass) {
      rep.pass = false;
      rep.counterexample = "not increasing between t = " + std::to_string(t_grid[i - 1]) + " and t = " +
                           std::to_string(t_grid[i]);
    }
    prev = cur;
  }
  return rep;
}

}  // namespace lieps::preserve
