// Witness construction: a rank-one nilpotent B with sigma_eps([A,B]) not
// symmetric under z -> -z. Normal matrices use three eigenvectors; non-normal
// ones use a reordered Schur frame. Every candidate is certified before it is
// returned, and random candidates cover whatever the constructions miss.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "lieps/classify.hpp"
#include "lieps/cubic.hpp"
#include "lieps/errors.hpp"
#include "lieps/linalg.hpp"
#include "lieps/pseudo.hpp"

namespace lieps::classify {
namespace {

std::vector<cplx> column(const CMatrix& v, std::size_t j) {
  std::vector<cplx> c(v.n());
  for (std::size_t i = 0; i < v.n(); ++i) c[i] = v(i, j);
  return c;
}

// sum_k coeffs[k] * column k of v.
std::vector<cplx> combine(const CMatrix& v, std::span<const cplx> coeffs) {
  std::vector<cplx> out(v.n());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (std::size_t i = 0; i < v.n(); ++i) out[i] += coeffs[k] * v(i, k);
  }
  return out;
}

CMatrix permute_columns(const CMatrix& v, const std::vector<std::size_t>& order) {
  CMatrix out(v.n());
  for (std::size_t j = 0; j < order.size(); ++j) {
    for (std::size_t i = 0; i < v.n(); ++i) out(i, j) = v(i, order[j]);
  }
  return out;
}

// Columns first, then the rest in increasing order.
std::vector<std::size_t> leading_order(std::size_t n, std::initializer_list<std::size_t> first) {
  std::vector<std::size_t> order(first);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  }
  return order;
}

void scale_column(CMatrix& v, std::size_t j, cplx s) {
  for (std::size_t i = 0; i < v.n(); ++i) v(i, j) *= s;
}

struct Candidate {
  std::vector<cplx> x, y;
  CaseTag route;
  // Frame in which [A,B] is a 3x3 block padded with zeros, and the unit
  // factor that turns that block into the lemma's normal form.
  std::optional<CMatrix> frame;
  cplx rotation = 1.0;
};

std::optional<WitnessCertificate> certify(const CMatrix& a, const CMatrix& b,
                                          const std::optional<CMatrix>& frame, cplx rotation,
                                          std::uint64_t seed, const WitnessOptions& opts) {
  const CMatrix c = commutator(a, b);
  const double s = spectral_norm(c);
  if (!(s > 0.0)) return std::nullopt;
  const CMatrix cn = c * cplx(1.0 / s);
  const double eps = opts.relative_eps;

  if (frame && a.n() >= 3) {
    const CMatrix k = frame->adjoint() * cn * *frame;
    double off = 0.0;
    for (std::size_t i = 0; i < k.n(); ++i) {
      for (std::size_t j = 0; j < k.n(); ++j) {
        if (i >= 3 || j >= 3) off = std::max(off, std::abs(k(i, j)));
      }
    }
    if (off <= 1e-10) {
      if (auto cert = lemt::asymmetry_certificate(k.leading_block(3) * rotation, eps)) {
        const cplx z = cert->witness / rotation;
        const double m = std::min(eps - smin_shift(cn, z), smin_shift(cn, -z) - eps);
        if (m > opts.delta) return WitnessCertificate{s * eps, s * z, s * m, "cubic"};
      }
    }
  }

  pseudo::ProbeOptions po;
  po.n_probes = 256;
  po.seed = seed;
  po.delta = opts.delta;
  po.rays.threads = opts.threads;
  const auto v = pseudo::symmetric(cn, eps, po);
  if (v.asymmetric()) return WitnessCertificate{s * eps, s * *v.witness, s * v.margin, "probe"};
  return std::nullopt;
}

// Three eigenvalues a, b, c with Re((b - a) conj(c - a)) > 0; then
// X = x y^* with x = sqrt2 q_a + q_b + q_c, y = q_c - q_b.
std::optional<Candidate> normal_candidate(const SchurForm& sf, const Tolerances& tol) {
  const std::size_t n = sf.t.n();
  std::vector<cplx> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = sf.t(i, i);
  const auto labels = eigenvalue_clusters(ev, tol.cluster);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == reps.size()) reps.push_back(i);
  }
  if (reps.size() < 3) return std::nullopt;

  std::array<std::size_t, 3> best{};
  double best_gap = -1.0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      for (std::size_t k = j + 1; k < reps.size(); ++k) {
        const cplx p = ev[reps[i]], q = ev[reps[j]], r = ev[reps[k]];
        const double gap = std::min({std::abs(p - q), std::abs(q - r), std::abs(p - r)});
        if (gap > best_gap) {
          best_gap = gap;
          best = {reps[i], reps[j], reps[k]};
        }
      }
    }
  }
  // Keep the natural labelling when it already satisfies the inequality;
  // otherwise one of the other two choices of a does.
  std::array<std::size_t, 3> abc = best;
  double best_re = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < 3; ++r) {
    const std::size_t ia = best[r], ib = best[(r + 1) % 3], ic = best[(r + 2) % 3];
    const double re = ((ev[ib] - ev[ia]) * std::conj(ev[ic] - ev[ia])).real();
    if (re > 0.0) {
      abc = {ia, ib, ic};
      break;
    }
    if (re > best_re) {
      best_re = re;
      abc = {ia, ib, ic};
    }
  }

  Candidate c;
  c.route = CaseTag::NormalManyEig;
  const std::array<cplx, 3> u{std::sqrt(2.0), 1.0, 1.0};
  const std::array<cplx, 3> v{0.0, -1.0, 1.0};
  const CMatrix frame = permute_columns(sf.q, leading_order(n, {abc[0], abc[1], abc[2]}));
  c.x = combine(frame, u);
  c.y = combine(frame, v);
  c.frame = frame;
  // 2/(b - c) (A - (b + c)/2) sends b -> 1, c -> -1; only its phase matters.
  c.rotation = std::polar(1.0, -std::arg(ev[abc[1]] - ev[abc[2]]));
  return c;
}

// Householder reflector H (Hermitian, unitary) with H w parallel to e_1.
CMatrix householder(const std::vector<cplx>& w) {
  const std::size_t m = w.size();
  const double nw = norm(w);
  std::vector<cplx> v = w;
  const cplx phase = std::abs(w[0]) > 0.0 ? w[0] / std::abs(w[0]) : cplx(1.0);
  v[0] += phase * nw;
  const double vv = std::norm(norm(v));
  CMatrix h = CMatrix::identity(m);
  if (vv == 0.0) return h;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) h(i, j) -= 2.0 * v[i] * std::conj(v[j]) / vv;
  }
  return h;
}

// Reorders the Schur form so that t(0, 1) is nonzero, trying the largest
// off-diagonal entries first.
std::optional<SchurForm> leading_coupled(const SchurForm& sf, double small) {
  const std::size_t n = sf.t.n();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(sf.t(i, j)) > small) pairs.emplace_back(i, j);
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
    return std::abs(sf.t(p.first, p.second)) > std::abs(sf.t(q.first, q.second));
  });
  for (const auto& [i, j] : pairs) {
    SchurForm s = sf;
    for (std::size_t k = i; k-- > 0;) schur_swap(s, k);
    for (std::size_t k = j; k-- > 1;) schur_swap(s, k);
    if (std::abs(s.t(0, 1)) > small) return s;
  }
  return std::nullopt;
}

std::vector<Candidate> nonnormal_candidates(const CMatrix& a, const SchurForm& sf0, double small) {
  std::vector<Candidate> out;
  const std::size_t n = a.n();
  const auto reordered = leading_coupled(sf0, small);
  if (!reordered) return out;
  const SchurForm& sf = *reordered;

  double tail = 0.0;
  for (std::size_t j = 2; j < n; ++j) tail += std::norm(sf.t(0, j)) + std::norm(sf.t(1, j));
  tail = std::sqrt(tail);

  if (tail > small) {
    // Rotate rows 1-2 so that row 2 picks up a tail and a real (2,1) entry,
    // then fold that tail onto column 3.
    std::optional<Candidate> best;
    double best_score = 0.0;
    for (double theta : {0.25, 0.125, 0.375, 1.0 / 3.0, 1.0 / 6.0}) {
      const double cs = std::cos(theta * std::numbers::pi), sn = std::sin(theta * std::numbers::pi);
      CMatrix u1 = CMatrix::identity(n);
      u1(0, 0) = cs;
      u1(0, 1) = sn;
      u1(1, 0) = -sn;
      u1(1, 1) = cs;
      CMatrix v = sf.q * u1.adjoint();
      CMatrix at = v.adjoint() * a * v;
      std::vector<cplx> w(n - 2);
      for (std::size_t j = 2; j < n; ++j) w[j - 2] = std::conj(at(1, j));
      if (norm(w) <= small) continue;
      const CMatrix h = householder(w);
      CMatrix u2 = CMatrix::identity(n);
      for (std::size_t i = 2; i < n; ++i) {
        for (std::size_t j = 2; j < n; ++j) u2(i, j) = h(i - 2, j - 2);
      }
      v = v * u2.adjoint();
      at = v.adjoint() * a * v;
      scale_column(v, 0, std::polar(1.0, -std::arg(at(1, 0))));
      at = v.adjoint() * a * v;
      const double score = std::min(std::abs(at(1, 0)), std::abs(at(1, 2)));
      if (score > best_score) {
        best_score = score;
        Candidate c;
        c.route = CaseTag::NonNormal2a;
        c.x = column(v, 0);
        c.y = column(v, 1);
        c.frame = v;
        best = std::move(c);
      }
    }
    if (best) out.push_back(std::move(*best));
    return out;
  }

  // Rows 1-2 are decoupled from the rest. Any k >= 2 can serve as the third
  // index; order the choices by how weakly k couples to the others.
  std::vector<std::pair<double, std::size_t>> ks;
  for (std::size_t k = 2; k < n; ++k) {
    double coupling = 0.0;
    for (std::size_t j = k + 1; j < n; ++j) coupling += std::norm(sf.t(k, j));
    for (std::size_t i = 2; i < k; ++i) coupling += std::norm(sf.t(i, k));
    ks.emplace_back(coupling, k);
  }
  std::stable_sort(ks.begin(), ks.end());
  for (const auto& [coupling, k] : ks) {
    SchurForm s = sf;
    cplx a11 = s.t(0, 0) - s.t(k, k), a22 = s.t(1, 1) - s.t(k, k);
    if (std::abs(a11) <= small && std::abs(a22) > small) {
      schur_swap(s, 0);
      std::swap(a11, a22);
    }
    CMatrix v = permute_columns(s.q, leading_order(n, {0, 1, k}));
    Candidate c;
    std::array<cplx, 3> xf{}, yf{1.0, 0.0, 1.0};
    double phi = std::arg(s.t(0, 1));
    if (std::abs(a11) <= small && std::abs(a22) <= small) {
      c.route = CaseTag::NonNormal2bi;
      xf = {1.0, 1.0, -1.0};
    } else {
      c.route = CaseTag::NonNormal2bii;
      xf = {1.0, 0.0, -1.0};
      // e^{i theta} A makes a11 real; the diagonal frame then makes a12 real.
      const double theta = -std::arg(a11);
      phi += theta;
      c.rotation = std::polar(1.0, theta);
    }
    scale_column(v, 1, std::polar(1.0, -phi));
    c.x = combine(v, xf);
    c.y = combine(v, yf);
    c.frame = v;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Witness construct_witness(const CMatrix& a, const WitnessOptions& opts) {
  if (a.n() < 3) throw DimensionError("construct_witness: n must be >= 3");
  if (direct_two_eig_normal(a, opts.tol)) {
    throw InvalidTarget("construct_witness: A is normal with at most two eigenvalues");
  }
  const SchurForm sf = schur(a);
  const double small = opts.tol.cluster * std::max(1.0, a.frobenius_norm());

  std::vector<Candidate> cands;
  if (is_normal(a, opts.tol.normality)) {
    if (auto c = normal_candidate(sf, opts.tol)) cands.push_back(std::move(*c));
  } else {
    cands = nonnormal_candidates(a, sf, small);
  }

  std::uint64_t stream = 0;
  for (auto& c : cands) {
    RankOneNilpotent b(c.x, c.y);
    if (auto cert = certify(a, b.matrix(), c.frame, c.rotation, derive_seed(opts.seed, stream++), opts)) {
      return {std::move(b), c.route, std::move(*cert)};
    }
  }
  for (std::size_t i = 0; i < opts.budget; ++i) {
    auto b = random_rank_one_nilpotent(a.n(), derive_seed(opts.seed, 1000 + 2 * i));
    if (auto cert = certify(a, b.matrix(), std::nullopt, 1.0, derive_seed(opts.seed, 1001 + 2 * i), opts)) {
      return {std::move(b), CaseTag::Fallback, std::move(*cert)};
    }
  }
  throw BudgetExhausted("construct_witness: no certified witness within budget " +
                        std::to_string(opts.budget));
}

}  // namespace lieps::classify
