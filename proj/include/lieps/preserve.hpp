#pragma once

// Maps of the form A -> mu_A U tau(A) U^* + nu_A I, radial unitary
// similarity invariant functions, and checks that such maps preserve
// f([A, B]) or sigma_eps([A, B]) on random pairs.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lieps/cmatrix.hpp"
#include "lieps/random.hpp"

namespace lieps::preserve {

// ---------------------------------------------------------------------------
// Radial functions

struct RadialFunction {
  std::string name;
  std::function<double(const CMatrix&)> eval;
  /// Absolute accuracy of eval (0 for closed-form functions).
  double accuracy = 0.0;

  double operator()(const CMatrix& a) const { return eval(a); }

  /// Pseudospectral radius r_eps with the given sweep settings.
  static RadialFunction pseudospectral_radius(double eps, std::size_t n_rays = 720, double tol = 1e-10);
  static RadialFunction frobenius();
  static RadialFunction largest_singular_value();
  /// Spectral radius. Unitarily invariant but zero on nilpotents.
  static RadialFunction spectral_radius();
};

/// Parses "reps:<eps>", "frobenius", "s1", or "specrad". The sweep settings
/// apply to reps only.
RadialFunction radial_from_string(const std::string& spec, std::size_t n_rays = 720, double tol = 1e-10);

struct PropertyReport {
  bool pass = true;
  std::size_t trials = 0;
  /// P1: max relative deviation. P2: min f(A) - f(0). P3: min increment.
  double margin = 0.0;
  std::optional<std::string> counterexample;
};

/// |f(mu U A U^*) - f(A)| <= tol (1 + f(A)) over random mu, U, and A drawn
/// from all families at dimension n.
PropertyReport check_P1(const RadialFunction& f, std::size_t n, std::size_t trials, std::uint64_t seed,
                        double tol);
/// f(A) > f(0) for nonzero A. The first trial is E_12.
PropertyReport check_P2(const RadialFunction& f, std::size_t n, std::size_t trials, std::uint64_t seed);
/// f(t X) strictly increasing over {0} and the sorted positive grid.
PropertyReport check_P3(const RadialFunction& f, const RankOneNilpotent& x, std::vector<double> t_grid);

// ---------------------------------------------------------------------------
// Canonical maps

enum class Tau { Identity, Conjugate, Transpose, Adjoint, ITranspose };

std::string_view to_string(Tau t);
Tau tau_from_string(std::string_view s);
CMatrix apply_tau(Tau t, const CMatrix& a);

struct ScalarRule {
  enum class Kind {
    Constant,         ///< (mu, nu) for every A
    RandomPerMatrix,  ///< unit mu_A and Gaussian nu_A seeded by the entries of A
    RandomShift,      ///< constant mu, nu_A seeded by the entries of A
    Custom,
  };
  Kind kind = Kind::Constant;
  cplx mu = 1.0;
  cplx nu = 0.0;
  std::uint64_t seed = 0;
  std::function<std::pair<cplx, cplx>(const CMatrix&)> custom;

  std::pair<cplx, cplx> operator()(const CMatrix& a) const;
};

std::string_view to_string(ScalarRule::Kind k);

struct Exceptional {
  enum class Kind { None, TwoEigNormal, Custom };
  enum class Action {
    AdjointSwap,  ///< use tau(A)^* in place of tau(A)
    SignFlip,     ///< use -mu_A in place of mu_A
  };
  Kind kind = Kind::None;
  Action action = Action::SignFlip;
  std::function<bool(const CMatrix&)> custom;

  bool contains(const CMatrix& a) const;
};

struct CanonicalMap {
  CMatrix u;
  Tau tau = Tau::Identity;
  ScalarRule scalars{};
  Exceptional exceptional{};
};

/// mu_A U tau(A) U^* + nu_A I with the exceptional action applied when A is
/// in the exceptional set. Throws DimensionError on size mismatch and
/// InvalidTarget when U is not unitary or |mu_A| != 1 (both at 1e-10).
CMatrix apply_map(const CanonicalMap& m, const CMatrix& a);

// ---------------------------------------------------------------------------
// Invariance checks on random pairs

struct PairOptions {
  std::size_t n_pairs = 100;
  std::uint64_t seed = 0;
  /// Dimensions cycled through by pair index.
  std::vector<std::size_t> dims{3, 4};
  std::size_t threads = 1;
};

/// Pair k draws A and B from different families at dims[k % dims.size()].
std::pair<CMatrix, CMatrix> random_pair(const PairOptions& opts, std::size_t k);

struct Counterexample {
  std::size_t pair = 0;
  CMatrix a;
  CMatrix b;
  std::string detail;
};

struct LieReport {
  bool pass = true;
  std::size_t pairs = 0;
  /// max |f([A,B]) - f([phi(A), phi(B)])| / (1 + f([A,B])).
  double max_deviation = 0.0;
  std::optional<Counterexample> counterexample;
};

LieReport verify_lie_invariance(const CanonicalMap& m, const RadialFunction& f, double tol,
                                const PairOptions& opts = {});

enum class Membership { None, One, Both };
std::string_view to_string(Membership p);

struct SigmaReport {
  bool pass = true;
  std::size_t pairs = 0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::size_t disagreements = 0;
  /// How many of A, B lie in the exceptional set, per pair.
  std::vector<Membership> patterns;
  std::optional<Counterexample> counterexample;
};

struct SigmaOptions {
  double eps = 1.0;
  std::size_t samples = 500;
  double delta = 1e-6;
  PairOptions pairs{};
  /// Pairs to test in addition to the random ones (engineered patterns).
  std::vector<std::pair<CMatrix, CMatrix>> extra_pairs;
};

/// Compares sampled sigma_eps([A,B]) and sigma_eps([phi(A), phi(B)]). Throws
/// InvalidTarget when tau is not Identity or ITranspose, when mu_A is not
/// constant (Constant or RandomShift rules only, or Custom), or when the
/// exceptional action is not SignFlip.
SigmaReport verify_sigma_invariance(const CanonicalMap& m, const SigmaOptions& opts);

// ---------------------------------------------------------------------------
// Spectrum matching

/// All |lambda_i - lambda_j| = |gamma_i - gamma_j| within tol (1 + spread).
/// Throws DimensionError on length mismatch.
bool check_pairwise_isometry(const std::vector<cplx>& lambdas, const std::vector<cplx>& gammas,
                             double tol = 1e-8);

enum class MatchMode { Linear, ConjugateLinear, Both };
std::string_view to_string(MatchMode m);

struct SpectrumMatch {
  MatchMode mode = MatchMode::Linear;
  /// gamma_i = mu lambda_i + nu (Linear and Both).
  cplx mu = 1.0;
  cplx nu = 0.0;
  /// conj(gamma_i) = conj_mu lambda_i + conj_nu (ConjugateLinear and Both).
  cplx conj_mu = 1.0;
  cplx conj_nu = 0.0;
  double max_residual = 0.0;
};

/// Throws NoIsometry when the pairwise distances differ and NoSolution when
/// neither affine form fits within tol (1 + spread).
SpectrumMatch match_spectra(const std::vector<cplx>& lambdas, const std::vector<cplx>& gammas,
                            double tol = 1e-8);

}  // namespace lieps::preserve
