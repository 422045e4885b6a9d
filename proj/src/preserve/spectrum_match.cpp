#include <cmath>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/preserve.hpp"

namespace lieps::preserve {
namespace {

void require_same_length(const std::vector<cplx>& l, const std::vector<cplx>& g) {
  if (l.size() != g.size()) throw DimensionError("spectrum matching: lists differ in length");
}

double fit_residual(const std::vector<cplx>& l, const std::vector<cplx>& g, cplx mu, cplx nu) {
  double r = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) r = std::max(r, std::abs(mu * l[i] + nu - g[i]));
  return r;
}

std::vector<cplx> conjugated(const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::conj(v[i]);
  return out;
}

}  // namespace

std::string_view to_string(MatchMode m) {
  switch (m) {
    case MatchMode::Linear: return "linear";
    case MatchMode::ConjugateLinear: return "conjugate-linear";
    case MatchMode::Both: return "both";
  }
  return "?";
}

bool check_pairwise_isometry(const std::vector<cplx>& lambdas, const std::vector<cplx>& gammas,
                             double tol) {
  require_same_length(lambdas, gammas);
  const double bound = tol * (1.0 + eigenvalue_spread(lambdas));
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
      if (std::abs(std::abs(lambdas[i] - lambdas[j]) - std::abs(gammas[i] - gammas[j])) > bound) return false;
    }
  }
  return true;
}

SpectrumMatch match_spectra(const std::vector<cplx>& lambdas, const std::vector<cplx>& gammas, double tol) {
  require_same_length(lambdas, gammas);
  if (lambdas.empty()) throw DimensionError("match_spectra: empty lists");
  if (!check_pairwise_isometry(lambdas, gammas, tol)) {
    throw NoIsometry("match_spectra: pairwise distances differ");
  }
  const double spread = eigenvalue_spread(lambdas);
  const double bound = tol * (1.0 + spread);
  const std::vector<cplx> gbar = conjugated(gammas);

  SpectrumMatch out;
  if (spread <= bound) {
    out.mode = MatchMode::Both;
    out.mu = 1.0;
    out.nu = gammas[0] - lambdas[0];
    out.conj_mu = 1.0;
    out.conj_nu = gbar[0] - lambdas[0];
    out.max_residual = std::max(fit_residual(lambdas, gammas, out.mu, out.nu),
                                fit_residual(lambdas, gbar, out.conj_mu, out.conj_nu));
    return out;
  }

  std::size_t p = 0, q = 1;
  double far = -1.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
      const double d = std::abs(lambdas[i] - lambdas[j]);
      if (d > far) {
        far = d;
        p = i;
        q = j;
      }
    }
  }
  const cplx dl = lambdas[p] - lambdas[q];
  const cplx mu1 = (gammas[p] - gammas[q]) / dl;
  const cplx nu1 = gammas[p] - mu1 * lambdas[p];
  const cplx mu2 = (gbar[p] - gbar[q]) / dl;
  const cplx nu2 = gbar[p] - mu2 * lambdas[p];
  const double r1 = fit_residual(lambdas, gammas, mu1, nu1);
  const double r2 = fit_residual(lambdas, gbar, mu2, nu2);
  const bool ok1 = r1 <= bound && std::abs(std::abs(mu1) - 1.0) <= tol;
  const bool ok2 = r2 <= bound && std::abs(std::abs(mu2) - 1.0) <= tol;
  if (!ok1 && !ok2) {
    throw NoSolution("match_spectra: distances agree but no affine isometry fits (residuals " +
                     std::to_string(r1) + ", " + std::to_string(r2) + ")");
  }
  out.mu = mu1;
  out.nu = nu1;
  out.conj_mu = mu2;
  out.conj_nu = nu2;
  if (ok1 && ok2) {
    out.mode = MatchMode::Both;
    out.max_residual = std::max(r1, r2);
  } else if (ok1) {
    out.mode = MatchMode::Linear;
    out.max_residual = r1;
  } else {
    out.mode = MatchMode::ConjugateLinear;
    out.max_residual = r2;
  }
  return out;
}

}  // namespace lieps::preserve
