#include "lieps/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/pseudo.hpp"

namespace lieps::classify {

std::string_view to_string(CaseTag c) {
  switch (c) {
    case CaseTag::TwoEigNormal: return "TwoEigNormal";
    case CaseTag::NormalManyEig: return "NormalManyEig";
    case CaseTag::NonNormal2a: return "NonNormal-2a";
    case CaseTag::NonNormal2bi: return "NonNormal-2bi";
    case CaseTag::NonNormal2bii: return "NonNormal-2bii";
    case CaseTag::Fallback: return "Fallback";
  }
  return "?";
}

bool direct_two_eig_normal(const CMatrix& a, const Tolerances& tol) {
  if (a.n() < 3) throw DimensionError("direct_two_eig_normal: n must be >= 3");
  if (!is_normal(a, tol.normality)) return false;
  return distinct_eigenvalue_count(eigenvalues(a), tol.cluster) <= 2;
}

ProbeResult probe_two_eig_normal(const CMatrix& a, double eps, const ProbeOptions& opts) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ToleranceError("probe_two_eig_normal: eps must be positive");
  ProbeResult out;
  pseudo::ProbeOptions po;
  po.n_probes = opts.samples_per_probe;
  po.delta = opts.delta;
  po.rays.threads = opts.threads;
  for (std::size_t i = 0; i < opts.n_probes; ++i) {
    auto b = random_rank_one_nilpotent(a.n(), derive_seed(opts.seed, 2 * i));
    po.seed = derive_seed(opts.seed, 2 * i + 1);
    const auto verdict = pseudo::symmetric(commutator(a, b.matrix()), eps, po);
    out.probes_used = i + 1;
    if (verdict.asymmetric()) {
      out.symmetric = false;
      out.falsifier = std::move(b);
      out.z = *verdict.witness;
      out.margin = verdict.margin;
      break;
    }
  }
  return out;
}

double two_eig_symmetry_residual(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.n() != b.n()) throw DimensionError("two_eig_symmetry_residual: dimension mismatch");
  if (!direct_two_eig_normal(a, tol)) throw InvalidTarget("two_eig_symmetry_residual: A is not two-eig normal");
  const SchurForm sf = schur(a);
  std::vector<cplx> ev(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) ev[i] = sf.t(i, i);
  const auto labels = eigenvalue_clusters(ev, tol.cluster);
  if (*std::max_element(labels.begin(), labels.end()) == 0) {
    throw InvalidTarget("two_eig_symmetry_residual: A is scalar");
  }
  const CMatrix c = sf.q.adjoint() * commutator(a, b) * sf.q;
  const double cn = c.frobenius_norm();
  if (cn == 0.0) return 0.0;
  CMatrix r = c;
  for (std::size_t i = 0; i < c.n(); ++i) {
    for (std::size_t j = 0; j < c.n(); ++j) {
      const double sign = labels[i] == labels[j] ? 1.0 : -1.0;
      r(i, j) += sign * c(i, j);
    }
  }
  return r.frobenius_norm() / cn;
}

bool two_eig_symmetry_identity(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  return two_eig_symmetry_residual(a, b, tol) <= 1e-8;
}

ClassReport classify(const CMatrix& a, double eps, const ClassifyOptions& opts) {
  ClassReport rep;
  rep.direct = direct_two_eig_normal(a, opts.tol);
  rep.probe = probe_two_eig_normal(a, eps, opts.probe);
  rep.agree = rep.direct == rep.probe.symmetric;

  rep.normality_residual = normality_residual(a);
  const SpectralData sd = eigenvalues(a);
  const auto labels = eigenvalue_clusters(sd.eigenvalues, opts.tol.cluster);
  const double spread = eigenvalue_spread(sd.eigenvalues);
  rep.min_cluster_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) continue;
      rep.min_cluster_gap = std::min(rep.min_cluster_gap,
                                     std::abs(sd.eigenvalues[i] - sd.eigenvalues[j]) / (1.0 + spread));
    }
  }
  const double tn = opts.tol.normality;
  rep.near_tolerance = (rep.normality_residual > 0.1 * tn && rep.normality_residual <= 10.0 * tn) ||
                       rep.min_cluster_gap <= 10.0 * opts.tol.cluster;

  if (rep.direct) {
    rep.case_tag = CaseTag::TwoEigNormal;
    return rep;
  }
  WitnessOptions wo = opts.witness;
  wo.tol = opts.tol;
  try {
    rep.witness = construct_witness(a, wo);
    rep.case_tag = rep.witness->route;
  } catch (const BudgetExhausted& e) {
    rep.witness_error = e.what();
    rep.case_tag = CaseTag::Fallback;
  }
  return rep;
}

}  // namespace lieps::classify
