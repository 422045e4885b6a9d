#pragma once

// "Normal with at most two distinct eigenvalues", decided three ways: from
// the spectrum directly, by probing sigma_eps([A, B]) for symmetry under
// z -> -z over random rank-one nilpotents B, and by constructing a B whose
// commutator is certifiably asymmetric.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lieps/cmatrix.hpp"
#include "lieps/random.hpp"

namespace lieps::classify {

enum class CaseTag { TwoEigNormal, NormalManyEig, NonNormal2a, NonNormal2bi, NonNormal2bii, Fallback };

std::string_view to_string(CaseTag c);

struct Tolerances {
  /// Bound on normality_residual.
  double normality = 1e-10;
  /// Relative eigenvalue clustering threshold.
  double cluster = 1e-8;
};

/// Throws DimensionError for n < 3.
bool direct_two_eig_normal(const CMatrix& a, const Tolerances& tol = {});

struct ProbeOptions {
  std::size_t n_probes = 16;
  std::size_t samples_per_probe = 128;
  std::uint64_t seed = 0;
  double delta = 1e-6;
  std::size_t threads = 1;
};

struct ProbeResult {
  /// No probe found an asymmetric commutator.
  bool symmetric = true;
  std::size_t probes_used = 0;
  /// The first falsifying B with its witness point z and margin.
  std::optional<RankOneNilpotent> falsifier;
  cplx z = 0.0;
  double margin = 0.0;
};

/// Probe i uses B_i = random_rank_one_nilpotent(n, derive_seed(seed, i)).
ProbeResult probe_two_eig_normal(const CMatrix& a, double eps, const ProbeOptions& opts = {});

/// z in sigma_eps([A,B]) and -z outside, both by at least margin.
struct WitnessCertificate {
  double epsilon = 0.0;
  cplx z = 0.0;
  double margin = 0.0;
  /// "cubic" when the lemma's t0 construction produced z, "probe" otherwise.
  std::string method;
};

struct Witness {
  RankOneNilpotent b;
  CaseTag route = CaseTag::Fallback;
  WitnessCertificate certificate;
};

struct WitnessOptions {
  /// Random candidates tried after the constructive routes fail.
  std::size_t budget = 64;
  std::uint64_t seed = 0;
  double delta = 1e-6;
  /// Certification level in units of ||[A,B]||_2 (1 by default).
  double relative_eps = 1.0;
  std::size_t threads = 1;
  Tolerances tol{};
};

/// Throws InvalidTarget when A is two-eig normal and BudgetExhausted when no
/// candidate (constructive or random) certifies.
Witness construct_witness(const CMatrix& a, const WitnessOptions& opts = {});

/// ||C + J C J^*||_F / ||C||_F with C = Q^*[A,B]Q in an eigenbasis Q of A and
/// J = +-1 on the two eigenspaces. 0 when [A,B] = 0. Throws InvalidTarget
/// unless A is two-eig normal and not scalar.
double two_eig_symmetry_residual(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});
bool two_eig_symmetry_identity(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});

struct ClassifyOptions {
  ProbeOptions probe{};
  WitnessOptions witness{};
  Tolerances tol{};
};

struct ClassReport {
  bool direct = false;
  ProbeResult probe;
  std::optional<Witness> witness;
  /// Set when direct is false but every witness route failed.
  std::optional<std::string> witness_error;
  bool agree = false;
  CaseTag case_tag = CaseTag::Fallback;
  double normality_residual = 0.0;
  /// Smallest distance between distinct eigenvalue clusters, relative to
  /// 1 + spread (infinite with a single cluster).
  double min_cluster_gap = 0.0;
  /// Normality residual or cluster gap within a factor 10 of its tolerance.
  bool near_tolerance = false;
};

ClassReport classify(const CMatrix& a, double eps, const ClassifyOptions& opts = {});

}  // namespace lieps::classify
