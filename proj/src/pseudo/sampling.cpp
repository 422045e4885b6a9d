// Probe-point generation and the sampled set predicates built on it.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/parallel.hpp"
#include "lieps/pseudo.hpp"
#include "lieps/random.hpp"

namespace lieps::pseudo {
namespace {

constexpr double kJitter[] = {1e-3, 2e-2};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ToleranceError(std::string(what) + " must be positive");
}

cplx uniform_in_disk(Rng& rng, double radius) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const double r = radius * std::sqrt(ud(rng));
  return std::polar(r, 2.0 * std::numbers::pi * ud(rng));
}

double ray_tol(double t_max) { return std::max(1e-12, 1e-9 * t_max); }

struct Probe {
  double inside;   // s_min(C - zI)
  double outside;  // s_min(C + zI)
};

}  // namespace

std::vector<cplx> sample_points(const std::vector<const CMatrix*>& mats, double eps, std::size_t n,
                                std::uint64_t seed, const RayOptions& opts) {
  require_positive(eps, "eps");
  std::vector<cplx> pts;
  pts.reserve(n);
  if (mats.empty() || n == 0) return pts;

  double disk = 0.0;
  std::vector<double> t_max(mats.size());
  for (std::size_t m = 0; m < mats.size(); ++m) {
    t_max[m] = spectral_norm(*mats[m]) + eps;
    disk = std::max(disk, t_max[m]);
  }

  // Half of the budget goes to points hugging the boundary: four per
  // (matrix, angle) pair. Even angle counts include theta = 0 and pi.
  const std::size_t structured = n / 2;
  std::size_t n_angles = structured / (4 * mats.size());
  n_angles += n_angles % 2;
  std::vector<BoundaryHit> hits(mats.size() * n_angles);
  parallel_for(hits.size(), opts.threads, [&](std::size_t idx) {
    const std::size_t m = idx / n_angles, k = idx % n_angles;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_angles);
    RayOptions serial = opts;
    serial.threads = 1;
    hits[idx] = boundary_ray(*mats[m], eps, theta, ray_tol(t_max[m]), serial);
  });
  for (std::size_t idx = 0; idx < hits.size() && pts.size() + 4 <= structured; ++idx) {
    if (hits[idx].empty) continue;
    const std::size_t k = idx % n_angles;
    const cplx dir = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                         static_cast<double>(n_angles));
    const double t = hits[idx].t;
    for (double j : kJitter) {
      const double eta = j * std::max(t, eps);
      pts.push_back((t - eta) * dir);
      pts.push_back((t + eta) * dir);
    }
  }

  Rng rng(seed);
  while (pts.size() < n) pts.push_back(uniform_in_disk(rng, disk));
  return pts;
}

SymmetryVerdict symmetric(const CMatrix& c, double eps, const ProbeOptions& opts) {
  require_positive(eps, "eps");
  require_positive(opts.delta, "delta");
  SymmetryVerdict verdict;
  const double s1 = spectral_norm(c);
  if (s1 == 0.0) return verdict;  // sigma_eps(0) is a disk
  const double t_max = s1 + eps;

  // Candidates: for opposite ray pairs, points between the shorter and the
  // longer boundary hit on the longer ray (the shorter ray's mirror of such a
  // point lies beyond its outermost crossing), then uniform disk points.
  std::vector<cplx> cands;
  const std::size_t n_pairs = std::max<std::size_t>(4, opts.n_probes / 8);
  std::vector<double> fwd(n_pairs), bwd(n_pairs);
  parallel_for(2 * n_pairs, opts.rays.threads, [&](std::size_t idx) {
    const std::size_t k = idx % n_pairs;
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_pairs);
    RayOptions serial = opts.rays;
    serial.threads = 1;
    const double th = idx < n_pairs ? theta : theta + std::numbers::pi;
    const double t = boundary_ray(c, eps, th, ray_tol(t_max), serial).t;
    (idx < n_pairs ? fwd : bwd)[k] = t;
  });
  constexpr double kFractions[] = {0.5, 0.25, 0.75, 0.95};
  for (std::size_t k = 0; k < n_pairs && cands.size() < opts.n_probes; ++k) {
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_pairs);
    const double diff = fwd[k] - bwd[k];
    if (std::abs(diff) <= 4.0 * ray_tol(t_max)) continue;
    const cplx dir = std::polar(1.0, diff > 0.0 ? theta : theta + std::numbers::pi);
    const double t_long = std::max(fwd[k], bwd[k]);
    const double t_short = std::min(fwd[k], bwd[k]);
    for (double f : kFractions) {
      if (cands.size() < opts.n_probes) cands.push_back((t_short + f * (t_long - t_short)) * dir);
    }
  }
  Rng rng(opts.seed);
  while (cands.size() < opts.n_probes) cands.push_back(uniform_in_disk(rng, t_max));

  // Evaluate in fixed-size blocks so the first witness (by index) is found
  // without evaluating the whole budget.
  const std::size_t block = std::max<std::size_t>(16, opts.rays.threads * 4);
  std::vector<Probe> probes(cands.size());
  for (std::size_t start = 0; start < cands.size(); start += block) {
    const std::size_t stop = std::min(cands.size(), start + block);
    parallel_for(stop - start, opts.rays.threads, [&](std::size_t i) {
      const cplx z = cands[start + i];
      probes[start + i] = {smin_shift(c, z), smin_shift(c, -z)};
    });
    for (std::size_t i = start; i < stop; ++i) {
      const auto& p = probes[i];
      verdict.probes_used = i + 1;
      if (p.inside < eps - opts.delta && p.outside > eps + opts.delta) {
        verdict.kind = SymmetryKind::Asymmetric;
        verdict.witness = cands[i];
        verdict.margin = std::min(eps - p.inside, p.outside - eps);
        return verdict;
      }
      if (p.outside < eps - opts.delta && p.inside > eps + opts.delta) {
        verdict.kind = SymmetryKind::Asymmetric;
        verdict.witness = -cands[i];
        verdict.margin = std::min(eps - p.outside, p.inside - eps);
        return verdict;
      }
    }
  }
  return verdict;
}

SetComparison sampled_set_equal(const CMatrix& c1, const CMatrix& c2, double eps,
                                std::size_t n_samples, std::uint64_t seed, double delta,
                                const RayOptions& opts) {
  require_positive(eps, "eps");
  require_positive(delta, "delta");
  if (c1.n() != c2.n()) throw DimensionError("sampled_set_equal: dimension mismatch");
  const auto pts = sample_points({&c1, &c2}, eps, n_samples, seed, opts);
  std::vector<double> s1(pts.size()), s2(pts.size());
  parallel_for(pts.size(), opts.threads, [&](std::size_t i) {
    s1[i] = smin_shift(c1, pts[i]);
    s2[i] = smin_shift(c2, pts[i]);
  });
  SetComparison out;
  out.samples = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(s1[i] - eps) <= delta || std::abs(s2[i] - eps) <= delta) {
      ++out.skipped;
      continue;
    }
    if ((s1[i] < eps) != (s2[i] < eps)) {
      ++out.disagreements;
      if (!out.first_disagreement) out.first_disagreement = pts[i];
    }
  }
  out.equal = out.disagreements == 0;
  return out;
}

}  // namespace lieps::pseudo
