// lieps: command-line front end for pseudospectra of commutators.
//
// Exit codes: 0 success, 1 usage or input errors, 2 a verification found a
// counterexample or a requested certificate could not be produced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lieps/classify.hpp"
#include "lieps/cubic.hpp"
#include "lieps/errors.hpp"
#include "lieps/json_io.hpp"
#include "lieps/linalg.hpp"
#include "lieps/preserve.hpp"
#include "lieps/pseudo.hpp"
#include "lieps/random.hpp"

namespace {

using namespace lieps;
using io::json;

constexpr int kVerificationFailed = 2;

struct Globals {
  double eps = 1.0;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::size_t rays = 720;
  std::size_t resolution = 101;
  std::size_t probes = 16;
  std::optional<std::size_t> samples;
  std::size_t pairs = 100;
  std::string output;
  std::optional<std::string> format;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  bool no_timestamp = false;
  std::string kernels;
};

struct Run {
  Globals g;
  std::string command;
  std::string input;
  json extra_config = json::object();
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Printed as null in the config echo.
constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

json config_json(const Run& r, double tol) {
  json c;
  c["command"] = r.command;
  if (!r.input.empty()) c["input"] = r.input;
  c["eps"] = r.g.eps;
  c["tol"] = tol;
  c["seed"] = r.g.seed;
  c["rays"] = r.g.rays;
  c["resolution"] = r.g.resolution;
  c["probes"] = r.g.probes;
  if (r.g.samples) {
    c["samples"] = *r.g.samples;
  } else {
    c["samples"] = nullptr;
  }
  c["pairs"] = r.g.pairs;
  c["threads"] = r.g.threads;
  c["kernels"] = std::string(kernels::active().name);
  for (const auto& [k, v] : r.extra_config.items()) c[k] = v;
  return c;
}

void write_text(const Run& r, const std::string& text) {
  if (r.g.output.empty() || r.g.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(r.g.output);
  if (!out) throw FormatError("cannot write '" + r.g.output + "'");
  out << text;
}

void emit(const Run& r, double tol, const json& result) {
  json out;
  out["config"] = config_json(r, tol);
  if (!r.g.no_timestamp) out["timestamp"] = utc_timestamp();
  for (const auto& [k, v] : result.items()) out[k] = v;
  write_text(r, io::dump(out) + "\n");
}

CMatrix load_matrix(const std::string& path) { return io::matrix_from_json(io::read_json_file(path)); }

pseudo::RayOptions ray_options(const Globals& g) {
  pseudo::RayOptions o;
  o.threads = g.threads;
  return o;
}

// ---------------------------------------------------------------------------

int cmd_grid(Run& r, const std::vector<double>& center, std::optional<double> half_width) {
  const CMatrix a = load_matrix(r.input);
  pseudo::GridSpec spec;
  if (center.size() == 2) spec.center = cplx(center[0], center[1]);
  spec.half_width = half_width.value_or(spectral_norm(a) + r.g.eps);
  spec.resolution = r.g.resolution;
  r.extra_config["center"] = io::complex_to_json(spec.center);
  r.extra_config["half_width"] = spec.half_width;
  const auto sample = pseudo::grid(a, r.g.eps, spec, ray_options(r.g));
  const std::string format = r.g.format.value_or("csv");
  r.extra_config["format"] = format;
  if (format == "csv") {
    std::ostringstream os;
    const json config = config_json(r, kNotApplicable);
    for (const auto& [k, v] : config.items()) os << "# " << k << "=" << io::dump(v, -1) << "\n";
    if (!r.g.no_timestamp) os << "# timestamp=" << utc_timestamp() << "\n";
    io::write_grid_csv(os, sample);
    write_text(r, os.str());
    return 0;
  }
  json pts = json::array();
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    pts.push_back(json::array({sample.points[i].real(), sample.points[i].imag(), sample.smin_values[i],
                               static_cast<bool>(sample.membership[i])}));
  }
  json res;
  res["columns"] = json::array({"re", "im", "smin", "member"});
  res["points"] = std::move(pts);
  emit(r, kNotApplicable, res);
  return 0;
}

int cmd_radius(Run& r) {
  const CMatrix a = load_matrix(r.input);
  const double tol = r.g.tol.value_or(1e-10);
  const auto res = pseudo::radius(a, r.g.eps, r.g.rays, tol, ray_options(r.g));
  json j;
  j["value"] = res.value;
  j["argmax"] = io::complex_to_json(res.argmax);
  j["residual"] = res.certificate_residual;
  j["rays"] = res.rays_used;
  emit(r, tol, j);
  return 0;
}

int cmd_symmetry(Run& r) {
  const CMatrix a = load_matrix(r.input);
  pseudo::ProbeOptions po;
  po.n_probes = r.g.samples.value_or(256);
  po.seed = r.g.seed;
  po.delta = r.g.tol.value_or(1e-6);
  po.rays = ray_options(r.g);
  r.g.samples = po.n_probes;
  const auto v = pseudo::symmetric(a, r.g.eps, po);
  json j;
  j["kind"] = v.asymmetric() ? "asymmetric" : "symmetric-up-to-budget";
  j["witness"] = v.witness ? io::complex_to_json(*v.witness) : json(nullptr);
  j["margin"] = v.margin;
  j["probes_used"] = v.probes_used;
  emit(r, po.delta, j);
  return 0;
}

json witness_json(const classify::Witness& w) {
  json j;
  j["route"] = std::string(classify::to_string(w.route));
  j["x"] = io::complex_list_to_json(w.b.x);
  j["y"] = io::complex_list_to_json(w.b.y);
  json c;
  c["epsilon"] = w.certificate.epsilon;
  c["z"] = io::complex_to_json(w.certificate.z);
  c["margin"] = w.certificate.margin;
  c["method"] = w.certificate.method;
  j["certificate"] = std::move(c);
  return j;
}

classify::WitnessOptions witness_options(const Globals& g) {
  classify::WitnessOptions wo;
  wo.seed = g.seed;
  wo.threads = g.threads;
  wo.delta = g.tol.value_or(1e-6);
  return wo;
}

int cmd_classify(Run& r) {
  const CMatrix a = load_matrix(r.input);
  classify::ClassifyOptions opts;
  opts.probe.n_probes = r.g.probes;
  opts.probe.samples_per_probe = r.g.samples.value_or(128);
  opts.probe.seed = r.g.seed;
  opts.probe.threads = r.g.threads;
  opts.probe.delta = r.g.tol.value_or(1e-6);
  opts.witness = witness_options(r.g);
  r.g.samples = opts.probe.samples_per_probe;
  const auto rep = classify::classify(a, r.g.eps, opts);
  json j;
  j["direct"] = rep.direct;
  json p;
  p["symmetric"] = rep.probe.symmetric;
  p["probes_used"] = rep.probe.probes_used;
  if (rep.probe.falsifier) {
    p["falsifier"] = {{"x", io::complex_list_to_json(rep.probe.falsifier->x)},
                      {"y", io::complex_list_to_json(rep.probe.falsifier->y)},
                      {"z", io::complex_to_json(rep.probe.z)},
                      {"margin", rep.probe.margin}};
  }
  j["probe"] = std::move(p);
  j["witness"] = rep.witness ? witness_json(*rep.witness) : json(nullptr);
  if (rep.witness_error) j["witness_error"] = *rep.witness_error;
  j["agree"] = rep.agree;
  j["case_tag"] = std::string(classify::to_string(rep.case_tag));
  j["normality_residual"] = rep.normality_residual;
  j["min_cluster_gap"] = std::isfinite(rep.min_cluster_gap) ? json(rep.min_cluster_gap) : json(nullptr);
  j["near_tolerance"] = rep.near_tolerance;
  emit(r, opts.probe.delta, j);
  return rep.agree ? 0 : kVerificationFailed;
}

int cmd_witness(Run& r) {
  const CMatrix a = load_matrix(r.input);
  try {
    const auto opts = witness_options(r.g);
    const auto w = classify::construct_witness(a, opts);
    emit(r, opts.delta, witness_json(w));
    return 0;
  } catch (const BudgetExhausted& e) {
    json j;
    j["witness"] = nullptr;
    j["error"] = e.what();
    emit(r, witness_options(r.g).delta, j);
    return kVerificationFailed;
  }
}

json poly_json(std::span<const double> c) {
  json arr = json::array();
  for (double v : c) arr.push_back(v);
  return arr;
}

int cmd_lemt(Run& r, bool certify) {
  const CMatrix c = load_matrix(r.input);
  const double tol = r.g.tol.value_or(1e-8);
  const auto k = lemt::extract_polynomials(c);
  json j;
  j["p2"] = poly_json(k.p2);
  j["p1"] = poly_json(k.p1);
  j["p0"] = poly_json(k.p0);
  j["odd_linear_a"] = k.odd_linear_a;
  j["applicable"] = lemt::lemt_applicable(k, tol);
  j["warnings"] = k.warnings;
  if (!certify) {
    emit(r, tol, j);
    return 0;
  }
  const auto cert = lemt::asymmetry_certificate(c, r.g.eps);
  if (cert) {
    j["t0"] = cert->t0;
    j["margin"] = cert->margin;
    j["flipped"] = cert->flipped;
    j["witness"] = io::complex_to_json(cert->witness);
    j["witness_margin"] = cert->witness_margin;
    j["warnings"] = cert->warnings;
  } else {
    j["t0"] = nullptr;
    j["margin"] = nullptr;
  }
  emit(r, tol, j);
  return cert ? 0 : kVerificationFailed;
}

preserve::CanonicalMap load_map(const json& mj, const Globals& g) {
  using preserve::Exceptional;
  using preserve::ScalarRule;
  preserve::CanonicalMap m;
  std::size_t n = 0;
  if (mj.contains("U") && mj["U"].is_object()) {
    m.u = io::matrix_from_json(mj["U"]);
    n = m.u.n();
  } else {
    if (!mj.contains("n") || !mj["n"].is_number_integer()) throw FormatError("map: need n or a U matrix");
    n = mj["n"].get<std::size_t>();
    const std::string u = mj.value("U", std::string("identity"));
    if (u == "identity") {
      m.u = CMatrix::identity(n);
    } else if (u == "random") {
      m.u = random_unitary(n, derive_seed(g.seed, 0x5eed));
    } else {
      throw FormatError("map: U must be a matrix, \"identity\", or \"random\"");
    }
  }
  m.tau = preserve::tau_from_string(mj.value("tau", std::string("identity")));
  if (mj.contains("scalar_rule")) {
    const json& s = mj["scalar_rule"];
    const std::string kind = s.value("kind", std::string("constant"));
    if (kind == "constant") {
      m.scalars.kind = ScalarRule::Kind::Constant;
    } else if (kind == "random") {
      m.scalars.kind = ScalarRule::Kind::RandomPerMatrix;
    } else if (kind == "random-shift") {
      m.scalars.kind = ScalarRule::Kind::RandomShift;
    } else {
      throw FormatError("map: unknown scalar_rule kind '" + kind + "'");
    }
    if (s.contains("mu")) m.scalars.mu = io::complex_from_json(s["mu"], "scalar_rule.mu");
    if (s.contains("nu")) m.scalars.nu = io::complex_from_json(s["nu"], "scalar_rule.nu");
    m.scalars.seed = s.value("seed", g.seed);
  }
  if (mj.contains("exceptional")) {
    const json& e = mj["exceptional"];
    const std::string kind = e.value("kind", std::string("none"));
    if (kind == "none") {
      m.exceptional.kind = Exceptional::Kind::None;
    } else if (kind == "two-eig-normal") {
      m.exceptional.kind = Exceptional::Kind::TwoEigNormal;
    } else {
      throw FormatError("map: unknown exceptional kind '" + kind + "'");
    }
    const std::string action = e.value("action", std::string("sign-flip"));
    if (action == "sign-flip") {
      m.exceptional.action = Exceptional::Action::SignFlip;
    } else if (action == "adjoint-swap") {
      m.exceptional.action = Exceptional::Action::AdjointSwap;
    } else {
      throw FormatError("map: unknown exceptional action '" + action + "'");
    }
  }
  return m;
}

json counterexample_json(const std::optional<preserve::Counterexample>& c) {
  if (!c) return nullptr;
  return {{"pair", c->pair}, {"A", io::matrix_to_json(c->a)}, {"B", io::matrix_to_json(c->b)},
          {"detail", c->detail}};
}

int cmd_verify_map(Run& r, const std::string& map_path, const std::string& f_spec) {
  const preserve::CanonicalMap m = load_map(io::read_json_file(map_path), r.g);
  r.extra_config["map"] = map_path;
  r.extra_config["f"] = f_spec;
  preserve::PairOptions po;
  po.n_pairs = r.g.pairs;
  po.seed = r.g.seed;
  po.dims = {m.u.n()};
  po.threads = r.g.threads;

  if (f_spec.rfind("sigma:", 0) == 0) {
    preserve::SigmaOptions so;
    try {
      so.eps = std::stod(f_spec.substr(6));
    } catch (const std::exception&) {
      throw FormatError("bad --f '" + f_spec + "': expected sigma:<eps>");
    }
    if (!(so.eps > 0.0)) throw FormatError("bad --f '" + f_spec + "': eps must be positive");
    so.samples = r.g.samples.value_or(500);
    so.delta = r.g.tol.value_or(1e-6);
    so.pairs = po;
    r.g.samples = so.samples;
    const auto rep = preserve::verify_sigma_invariance(m, so);
    json counts = {{"none", 0}, {"one", 0}, {"both", 0}};
    for (auto p : rep.patterns) {
      const std::string key(preserve::to_string(p));
      counts[key] = counts[key].get<int>() + 1;
    }
    json j;
    j["pass"] = rep.pass;
    j["pairs"] = rep.pairs;
    j["samples"] = rep.samples;
    j["skipped"] = rep.skipped;
    j["disagreements"] = rep.disagreements;
    j["patterns"] = std::move(counts);
    j["counterexample"] = counterexample_json(rep.counterexample);
    emit(r, so.delta, j);
    return rep.pass ? 0 : kVerificationFailed;
  }

  const double tol = r.g.tol.value_or(1e-10);
  const auto f = preserve::radial_from_string(f_spec, r.g.rays, tol);
  const double threshold = 2.0 * tol;
  const auto rep = preserve::verify_lie_invariance(m, f, threshold, po);
  json j;
  j["pass"] = rep.pass;
  j["pairs"] = rep.pairs;
  j["max_deviation"] = rep.max_deviation;
  j["threshold"] = threshold;
  j["counterexample"] = counterexample_json(rep.counterexample);
  emit(r, tol, j);
  return rep.pass ? 0 : kVerificationFailed;
}

int cmd_match(Run& r, const std::string& lpath, const std::string& gpath) {
  const auto l = io::complex_list_from_json(io::read_json_file(lpath));
  const auto g = io::complex_list_from_json(io::read_json_file(gpath));
  r.extra_config["lambdas"] = lpath;
  r.extra_config["gammas"] = gpath;
  const double tol = r.g.tol.value_or(1e-8);
  json j;
  int code = 0;
  try {
    const auto m = preserve::match_spectra(l, g, tol);
    j["mode"] = std::string(preserve::to_string(m.mode));
    if (m.mode != preserve::MatchMode::ConjugateLinear) {
      j["mu"] = io::complex_to_json(m.mu);
      j["nu"] = io::complex_to_json(m.nu);
    }
    if (m.mode != preserve::MatchMode::Linear) {
      j["conj_mu"] = io::complex_to_json(m.conj_mu);
      j["conj_nu"] = io::complex_to_json(m.conj_nu);
    }
    j["max_residual"] = m.max_residual;
  } catch (const NoIsometry& e) {
    j["mode"] = nullptr;
    j["error"] = e.what();
    code = kVerificationFailed;
  } catch (const NoSolution& e) {
    j["mode"] = nullptr;
    j["error"] = e.what();
    code = kVerificationFailed;
  }
  emit(r, tol, j);
  return code;
}

int cmd_gen(Run& r, const std::string& family, std::size_t n) {
  const CMatrix a = random_matrix(n, r.g.seed, family_from_string(family));
  r.extra_config["family"] = family;
  r.extra_config["n"] = n;
  json j = io::matrix_to_json(a);
  json out;
  out["n"] = j["n"];
  out["entries"] = j["entries"];
  out["config"] = config_json(r, kNotApplicable);
  if (!r.g.no_timestamp) out["timestamp"] = utc_timestamp();
  write_text(r, io::dump(out) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectra of commutators: radii, symmetry probes, witnesses, and preserver checks."};
  app.require_subcommand(1);
  app.fallthrough();
  Run run;
  Globals& g = run.g;

  app.add_option("--eps", g.eps, "Pseudospectrum level eps (> 0, absolute units of the input)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol", g.tol,
                 "Tolerance. radius/verify-map: radius tolerance (default 1e-10); symmetry, classify, "
                 "witness, and sigma checks: dead band delta (default 1e-6); lemt/match-spectra: coefficient "
                 "tolerance (default 1e-8)");
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--rays", g.rays, "Uniform rays in the radius sweep")->check(CLI::Range(8, 1 << 20))->capture_default_str();
  app.add_option("--resolution", g.resolution, "Grid points per axis")->check(CLI::Range(2, 1 << 14))->capture_default_str();
  app.add_option("--probes", g.probes, "Random rank-one nilpotent probes (classify)")->capture_default_str();
  app.add_option("--samples", g.samples,
                 "Sample points per test (symmetry 256, classify 128 per probe, sigma checks 500)");
  app.add_option("--pairs", g.pairs, "Random (A, B) pairs (verify-map)")->capture_default_str();
  app.add_option("--output,-o", g.output, "Output file (default stdout)");
  app.add_option("--format", g.format, "json or csv (csv only for pspec grid)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp field");

  auto* pspec = app.add_subcommand("pspec", "Pseudospectrum computations on one matrix");
  pspec->require_subcommand(1);
  auto* grid = pspec->add_subcommand("grid", "s_min(A - zI) on a square grid (CSV: re,im,smin,member)");
  std::vector<double> center;
  std::optional<double> half_width;
  grid->add_option("--center", center, "Grid centre re im (default 0 0)")->expected(2);
  grid->add_option("--half-width", half_width, "Half side length (default s1(A) + eps)")->check(CLI::PositiveNumber);
  auto* radius = pspec->add_subcommand("radius", "Pseudospectral radius r_eps(A)");
  auto* symmetry = pspec->add_subcommand("symmetry", "Look for z in sigma_eps(A) with -z outside");
  for (auto* sc : {grid, radius, symmetry}) {
    sc->add_option("matrix", run.input, "Matrix JSON file")->required();
  }

  auto* cls = app.add_subcommand("classify", "Normal with at most two eigenvalues: direct, probe, and witness verdicts");
  cls->add_option("matrix", run.input, "Matrix JSON file (n >= 3)")->required();
  auto* wit = app.add_subcommand("witness", "Rank-one nilpotent B with sigma_eps([A,B]) != -sigma_eps([A,B])");
  wit->add_option("matrix", run.input, "Matrix JSON file (n >= 3)")->required();

  auto* lemt_cmd = app.add_subcommand("lemt", "Gram characteristic polynomial of a 3x3 block");
  lemt_cmd->require_subcommand(1);
  auto* coeffs = lemt_cmd->add_subcommand("coeffs", "p2, p1, p0 as polynomials in t (constant term first)");
  auto* certify = lemt_cmd->add_subcommand("certify", "Coefficients plus the t0 asymmetry certificate at --eps");
  for (auto* sc : {coeffs, certify}) sc->add_option("matrix", run.input, "3x3 matrix JSON file")->required();

  auto* vmap = app.add_subcommand("verify-map", "Check that a canonical map preserves f([A,B]) or sigma_eps([A,B])");
  std::string map_path, f_spec = "reps:1";
  vmap->add_option("--map", map_path,
                   "Map JSON: {n, U: matrix|\"identity\"|\"random\", tau, scalar_rule: {kind, mu, nu, seed}, "
                   "exceptional: {kind, action}}")
      ->required();
  vmap->add_option("--f", f_spec, "reps:<eps>, frobenius, s1, specrad, or sigma:<eps>")->capture_default_str();

  auto* match = app.add_subcommand("match-spectra", "Fit gamma = mu lambda + nu or conj(gamma) = mu lambda + nu");
  std::string lpath, gpath;
  match->add_option("--lambdas", lpath, "JSON list of [re, im]")->required();
  match->add_option("--gammas", gpath, "JSON list of [re, im], same order")->required();

  auto* gen = app.add_subcommand("gen", "Random matrix JSON");
  std::string family = "dense";
  std::size_t n = 3;
  gen->add_option("--family", family, "dense, normal, two-eig-normal, triangular, nilpotent")->capture_default_str();
  gen->add_option("--n", n, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();

  // Subcommand help also lists the global options, which may follow the
  // subcommand name.
  std::string globals = "\nGlobal options (also accepted after the subcommand):\n";
  for (const CLI::Option* o : app.get_options()) {
    if (o->get_name() == "--help") continue;
    std::string line = "  " + o->get_name();
    line.resize(std::max<std::size_t>(line.size() + 2, 18), ' ');
    line += o->get_description();
    if (!o->get_default_str().empty()) line += " [default: " + o->get_default_str() + "]";
    globals += line + "\n";
  }
  std::function<void(CLI::App*)> add_footer = [&](CLI::App* a) {
    for (CLI::App* sc : a->get_subcommands([](CLI::App*) { return true; })) {
      sc->footer(globals);
      add_footer(sc);
    }
  };
  add_footer(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (grid->parsed()) {
      run.command = "pspec grid";
      return cmd_grid(run, center, half_width);
    }
    if (radius->parsed()) {
      run.command = "pspec radius";
      return cmd_radius(run);
    }
    if (symmetry->parsed()) {
      run.command = "pspec symmetry";
      return cmd_symmetry(run);
    }
    if (cls->parsed()) {
      run.command = "classify";
      return cmd_classify(run);
    }
    if (wit->parsed()) {
      run.command = "witness";
      return cmd_witness(run);
    }
    if (coeffs->parsed() || certify->parsed()) {
      run.command = certify->parsed() ? "lemt certify" : "lemt coeffs";
      return cmd_lemt(run, certify->parsed());
    }
    if (vmap->parsed()) {
      run.command = "verify-map";
      return cmd_verify_map(run, map_path, f_spec);
    }
    if (match->parsed()) {
      run.command = "match-spectra";
      return cmd_match(run, lpath, gpath);
    }
    if (gen->parsed()) {
      run.command = "gen";
      return cmd_gen(run, family, n);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
