#include "lieps/pseudo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/parallel.hpp"

namespace lieps::pseudo {
namespace {

void require_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ToleranceError("eps must be positive and finite");
}

// Outermost t in [0, t_max] along `dir` with s_min(A - t dir I) <= eps.
BoundaryHit outermost_crossing(const CMatrix& a, double eps, cplx dir, double t_max, double tol,
                               std::size_t min_steps) {
  if (!(tol > 0.0)) throw ToleranceError("boundary_ray: tol must be positive");
  const std::size_t steps = std::max<std::size_t>(
      std::max<std::size_t>(min_steps, 1), static_cast<std::size_t>(std::ceil(t_max / eps)));
  const double h = t_max / static_cast<double>(steps);
  if (tol < h * 1e-13) {
    throw ToleranceError("boundary_ray: tol " + std::to_string(tol) +
                         " is below double resolution of the scan step " + std::to_string(h));
  }

  BoundaryHit hit;
  auto gap = [&](double t) {
    ++hit.evaluations;
    return smin_shift(a, t * dir) - eps;
  };
  auto t_at = [&](std::size_t k) { return k == steps ? t_max : static_cast<double>(k) * h; };

  std::size_t k = steps;
  for (;;) {
    const double g = gap(t_at(k));
    if (g <= 0.0) break;
    if (k == 0) {
      hit.empty = true;
      return hit;
    }
    // Points closer than g are certified outside (s_min is 1-Lipschitz in z).
    const double jumpf = std::floor(g / h * (1.0 - 1e-12));
    const std::size_t jump = jumpf < 1.0 ? 1 : static_cast<std::size_t>(std::min(jumpf, 1e18));
    if (jump >= k) {
      if (static_cast<double>(k) * h < g) {
        hit.empty = true;
        return hit;
      }
      k = 0;
    } else {
      k -= jump;
    }
  }
  if (k == steps) {
    hit.t = t_max;
    return hit;
  }
  double lo = t_at(k), hi = t_at(k + 1);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (gap(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  hit.t = lo;
  return hit;
}

}  // namespace

bool member(const CMatrix& a, cplx z, double eps) {
  require_eps(eps);
  return smin_shift(a, z) < eps;
}

PseudospecSample grid(const CMatrix& a, double eps, const GridSpec& spec, const RayOptions& opts) {
  require_eps(eps);
  if (spec.resolution < 2) throw DimensionError("grid: resolution must be >= 2");
  if (!(spec.half_width > 0.0) || !std::isfinite(spec.half_width)) {
    throw ToleranceError("grid: half_width must be positive and finite");
  }
  const std::size_t r = spec.resolution;
  const double step = 2.0 * spec.half_width / static_cast<double>(r - 1);
  PseudospecSample out;
  out.epsilon = eps;
  out.points.resize(r * r);
  out.smin_values.resize(r * r);
  out.membership.resize(r * r);
  // Row-major over imaginary part (outer), real part (inner).
  for (std::size_t iy = 0; iy < r; ++iy) {
    for (std::size_t ix = 0; ix < r; ++ix) {
      out.points[iy * r + ix] =
          spec.center + cplx(-spec.half_width + static_cast<double>(ix) * step,
                             -spec.half_width + static_cast<double>(iy) * step);
    }
  }
  parallel_for(r * r, opts.threads, [&](std::size_t i) {
    out.smin_values[i] = smin_shift(a, out.points[i]);
  });
  for (std::size_t i = 0; i < r * r; ++i) out.membership[i] = out.smin_values[i] < eps;
  return out;
}

BoundaryHit boundary_ray(const CMatrix& a, double eps, double theta, double tol,
                         const RayOptions& opts) {
  require_eps(eps);
  const double t_max = spectral_norm(a) + eps;
  return outermost_crossing(a, eps, std::polar(1.0, theta), t_max, tol, opts.scan_steps);
}

RadiusResult radius(const CMatrix& a, double eps, std::size_t n_rays, double tol,
                    const RayOptions& opts) {
  require_eps(eps);
  if (n_rays < 8) throw ToleranceError("radius: n_rays must be >= 8");
  if (!(tol > 0.0)) throw ToleranceError("radius: tol must be positive");

  const double t_max = spectral_norm(a) + eps;
  const double ray_tol = 0.25 * tol;
  RadiusResult res;
  auto ray = [&](double theta) {
    return outermost_crossing(a, eps, std::polar(1.0, theta), t_max, ray_tol, opts.scan_steps).t;
  };

  std::vector<double> thetas(n_rays);
  const double spacing = 2.0 * std::numbers::pi / static_cast<double>(n_rays);
  for (std::size_t j = 0; j < n_rays; ++j) thetas[j] = spacing * static_cast<double>(j);
  // Rays through the eigenvalues guarantee the lower bound rho(A) <= r_eps.
  for (const cplx& l : eigenvalues(a).eigenvalues) {
    if (std::abs(l) > 0.0) thetas.push_back(std::arg(l));
  }
  std::vector<double> hits(thetas.size());
  parallel_for(thetas.size(), opts.threads, [&](std::size_t j) { hits[j] = ray(thetas[j]); });
  res.rays_used = thetas.size();

  double best_t = -1.0, best_theta = 0.0;
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    if (hits[j] > best_t) {
      best_t = hits[j];
      best_theta = thetas[j];
    }
  }

  // Local maxima of the uniform profile (cyclic), best first.
  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < n_rays; ++j) {
    const double prev = hits[(j + n_rays - 1) % n_rays];
    const double next = hits[(j + 1) % n_rays];
    if (hits[j] >= prev && hits[j] >= next && hits[j] > 0.0) peaks.push_back(j);
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t x, std::size_t y) { return hits[x] > hits[y]; });
  if (peaks.size() > 3) peaks.resize(3);

  std::vector<double> centres;
  for (std::size_t j : peaks) centres.push_back(thetas[j]);
  if (std::find(centres.begin(), centres.end(), best_theta) == centres.end()) {
    centres.push_back(best_theta);
  }

  const double theta_tol = std::max(1e-13, 0.1 * std::sqrt(tol / std::max(t_max, 1e-300)));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (double centre : centres) {
    double lo = centre - spacing, hi = centre + spacing;
    double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
    double fc = ray(c), fd = ray(d);
    res.rays_used += 2;
    auto consider = [&](double t, double th) {
      if (t > best_t) {
        best_t = t;
        best_theta = th;
      }
    };
    consider(fc, c);
    consider(fd, d);
    while (hi - lo > theta_tol) {
      if (fc >= fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = ray(c);
        consider(fc, c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = ray(d);
        consider(fd, d);
      }
      ++res.rays_used;
    }
  }

  res.value = std::max(best_t, 0.0);
  res.argmax = std::polar(res.value, best_theta);
  res.certificate_residual = std::abs(smin_shift(a, res.argmax) - eps);
  return res;
}

}  // namespace lieps::pseudo
