#pragma once

// Epsilon-pseudospectra: sigma_eps(A) = { z : s_min(A - zI) < eps }.
//
// Everything here is built on smin_shift. Membership is strict, so points
// with s_min exactly eps are outside; set comparisons skip points whose s_min
// is within a dead band delta of eps.

#include <cstdint>
#include <optional>
#include <vector>

#include "lieps/cmatrix.hpp"

namespace lieps::pseudo {

struct GridSpec {
  cplx center = 0.0;
  double half_width = 1.0;
  /// Points per axis, >= 2. Points include both edges.
  std::size_t resolution = 101;
};

struct PseudospecSample {
  double epsilon = 0.0;
  std::vector<cplx> points;
  std::vector<double> smin_values;
  std::vector<bool> membership;
};

struct RayOptions {
  /// Coarse scan steps before bisection. Raised automatically so that the
  /// step never exceeds eps (an eps-disk around an eigenvalue cannot be
  /// stepped over).
  std::size_t scan_steps = 256;
  /// Worker threads for ray sweeps and grids (1 = serial). Results do not
  /// depend on this value.
  std::size_t threads = 1;
};

struct BoundaryHit {
  /// Outermost t in [0, s1(A) + eps] with s_min(A - t e^{i theta} I) <= eps.
  double t = 0.0;
  /// No scanned point on the ray was inside.
  bool empty = false;
  /// s_min evaluations used.
  std::size_t evaluations = 0;
};

struct RadiusResult {
  double value = 0.0;
  cplx argmax = 0.0;
  /// |s_min(A - argmax I) - eps|.
  double certificate_residual = 0.0;
  /// boundary_ray calls, including angular refinement.
  std::size_t rays_used = 0;
};

enum class SymmetryKind { SymmetricUpToBudget, Asymmetric };

struct SymmetryVerdict {
  SymmetryKind kind = SymmetryKind::SymmetricUpToBudget;
  /// When Asymmetric: s_min(C - zI) <= eps - margin and
  /// s_min(C + zI) >= eps + margin, margin > delta.
  std::optional<cplx> witness;
  double margin = 0.0;
  std::size_t probes_used = 0;

  bool asymmetric() const { return kind == SymmetryKind::Asymmetric; }
};

struct SetComparison {
  bool equal = true;
  std::size_t samples = 0;
  /// Points inside the delta band for either matrix.
  std::size_t skipped = 0;
  std::size_t disagreements = 0;
  std::optional<cplx> first_disagreement;
};

bool member(const CMatrix& a, cplx z, double eps);

PseudospecSample grid(const CMatrix& a, double eps, const GridSpec& spec,
                      const RayOptions& opts = {});

/// Coarse scan from the outer end inward, then bisection on the outermost
/// sign change of s_min - eps. The scan skips grid points that the 1-Lipschitz
/// bound on s_min already proves to be outside, so it lands on the same grid
/// point a full scan would. Returns the inside end of the final bracket.
/// Throws ToleranceError when tol cannot be resolved at the scan step.
BoundaryHit boundary_ray(const CMatrix& a, double eps, double theta, double tol,
                         const RayOptions& opts = {});

/// Angular sweep over n_rays uniform rays (plus rays through the
/// eigenvalues), then golden-section refinement of theta around the best
/// sampled local maxima.
RadiusResult radius(const CMatrix& a, double eps, std::size_t n_rays = 720, double tol = 1e-10,
                    const RayOptions& opts = {});

struct ProbeOptions {
  std::size_t n_probes = 256;
  std::uint64_t seed = 0;
  double delta = 1e-6;
  RayOptions rays{};
};

/// Looks for z with z inside sigma_eps(C) and -z outside, beyond the delta
/// band. Symmetric verdicts only mean that no witness was found in budget.
SymmetryVerdict symmetric(const CMatrix& c, double eps, const ProbeOptions& opts = {});

/// Candidate points used by symmetric() and sampled_set_equal(): boundary
/// hits on uniform angles of every given matrix with inward/outward jitter,
/// then uniform points in the disk of radius max s1 + eps. Exactly n points.
std::vector<cplx> sample_points(const std::vector<const CMatrix*>& mats, double eps,
                                std::size_t n, std::uint64_t seed, const RayOptions& opts = {});

/// Compares membership of sampled points in sigma_eps(C1) and sigma_eps(C2).
SetComparison sampled_set_equal(const CMatrix& c1, const CMatrix& c2, double eps,
                                std::size_t n_samples, std::uint64_t seed, double delta = 1e-6,
                                const RayOptions& opts = {});

}  // namespace lieps::pseudo
