#include <cmath>
#include <string>

#include "lieps/errors.hpp"
#include "lieps/parallel.hpp"
#include "lieps/preserve.hpp"
#include "lieps/pseudo.hpp"

namespace lieps::preserve {
namespace {

constexpr Family kFamilies[] = {Family::Dense, Family::Normal, Family::TwoEigNormal,
                                Family::Triangular, Family::Nilpotent};
constexpr Family kOutside[] = {Family::Dense, Family::Normal, Family::Triangular, Family::Nilpotent};

std::size_t dim_for(const PairOptions& opts, std::size_t k) {
  if (opts.dims.empty()) throw DimensionError("PairOptions: no dimensions given");
  return opts.dims[k % opts.dims.size()];
}

// Pair k has pattern k % 3: neither, exactly one (A), or both two-eig normal.
std::pair<CMatrix, CMatrix> patterned_pair(const PairOptions& opts, std::size_t k) {
  const std::size_t n = dim_for(opts, k);
  Rng rng(derive_seed(opts.seed, k));
  const std::size_t pattern = k % 3;
  const Family fa = pattern >= 1 ? Family::TwoEigNormal : kOutside[(k / 3) % std::size(kOutside)];
  const Family fb = pattern == 2 ? Family::TwoEigNormal : kOutside[(k / 3 + 1) % std::size(kOutside)];
  CMatrix a = random_matrix(n, rng, fa);
  CMatrix b = random_matrix(n, rng, fb);
  return {std::move(a), std::move(b)};
}

Membership pattern_of(const Exceptional& ex, const CMatrix& a, const CMatrix& b) {
  const int k = static_cast<int>(ex.contains(a)) + static_cast<int>(ex.contains(b));
  return k == 0 ? Membership::None : k == 1 ? Membership::One : Membership::Both;
}

}  // namespace

std::string_view to_string(Membership p) {
  switch (p) {
    case Membership::None: return "none";
    case Membership::One: return "one";
    case Membership::Both: return "both";
  }
  return "?";
}

std::pair<CMatrix, CMatrix> random_pair(const PairOptions& opts, std::size_t k) {
  const std::size_t n = dim_for(opts, k);
  Rng rng(derive_seed(opts.seed, k));
  CMatrix a = random_matrix(n, rng, kFamilies[k % std::size(kFamilies)]);
  CMatrix b = random_matrix(n, rng, kFamilies[(3 * k + 1) % std::size(kFamilies)]);
  return {std::move(a), std::move(b)};
}

LieReport verify_lie_invariance(const CanonicalMap& m, const RadialFunction& f, double tol,
                                const PairOptions& opts) {
  struct Row {
    double original = 0.0;
    double mapped = 0.0;
  };
  std::vector<Row> rows(opts.n_pairs);
  parallel_for(opts.n_pairs, opts.threads, [&](std::size_t k) {
    auto [a, b] = random_pair(opts, k);
    rows[k].original = f(commutator(a, b));
    rows[k].mapped = f(commutator(apply_map(m, a), apply_map(m, b)));
  });

  LieReport rep;
  rep.pairs = opts.n_pairs;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double dev = std::abs(rows[k].original - rows[k].mapped) / (1.0 + rows[k].original);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev > tol && rep.pass) {
      rep.pass = false;
      auto [a, b] = random_pair(opts, k);
      rep.counterexample = Counterexample{k, std::move(a), std::move(b),
                                          "f = " + std::to_string(rows[k].original) + " vs " +
                                              std::to_string(rows[k].mapped)};
    }
  }
  return rep;
}

SigmaReport verify_sigma_invariance(const CanonicalMap& m, const SigmaOptions& opts) {
  if (m.tau != Tau::Identity && m.tau != Tau::ITranspose) {
    throw InvalidTarget("verify_sigma_invariance: tau must be identity or itranspose");
  }
  using K = ScalarRule::Kind;
  if (m.scalars.kind == K::RandomPerMatrix) {
    throw InvalidTarget("verify_sigma_invariance: mu_A must be a constant sign");
  }
  if ((m.scalars.kind == K::Constant || m.scalars.kind == K::RandomShift) &&
      std::abs(m.scalars.mu - 1.0) > 1e-10 && std::abs(m.scalars.mu + 1.0) > 1e-10) {
    throw InvalidTarget("verify_sigma_invariance: mu must be 1 or -1");
  }
  if (m.exceptional.kind != Exceptional::Kind::None &&
      m.exceptional.action != Exceptional::Action::SignFlip) {
    throw InvalidTarget("verify_sigma_invariance: exceptional action must be a sign flip");
  }

  const std::size_t n_random = opts.pairs.n_pairs;
  const std::size_t total = n_random + opts.extra_pairs.size();
  auto pair_at = [&](std::size_t k) {
    return k < n_random ? patterned_pair(opts.pairs, k) : opts.extra_pairs[k - n_random];
  };
  std::vector<pseudo::SetComparison> cmp(total);
  std::vector<Membership> patterns(total);
  parallel_for(total, opts.pairs.threads, [&](std::size_t k) {
    const auto [a, b] = pair_at(k);
    patterns[k] = pattern_of(m.exceptional, a, b);
    const CMatrix c1 = commutator(a, b);
    const CMatrix c2 = commutator(apply_map(m, a), apply_map(m, b));
    cmp[k] = pseudo::sampled_set_equal(c1, c2, opts.eps, opts.samples, derive_seed(opts.pairs.seed, ~k),
                                       opts.delta);
  });

  SigmaReport rep;
  rep.pairs = total;
  rep.patterns = patterns;
  for (std::size_t k = 0; k < total; ++k) {
    rep.samples += cmp[k].samples;
    rep.skipped += cmp[k].skipped;
    rep.disagreements += cmp[k].disagreements;
    if (!cmp[k].equal && rep.pass) {
      rep.pass = false;
      auto [a, b] = pair_at(k);
      const cplx z = *cmp[k].first_disagreement;
      rep.counterexample = Counterexample{
          k, std::move(a), std::move(b),
          "membership differs at z = " + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
              std::to_string(z.imag()) + "i"};
    }
  }
  return rep;
}

}  // namespace lieps::preserve
