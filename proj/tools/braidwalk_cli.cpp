// Batch front end: drift tables, Monte Carlo runs, validation gates, Green
// function tables, entropy estimates, and graph export.  All output is
// deterministic for a fixed configuration and seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "braidwalk/bfs.hpp"
#include "braidwalk/boundary.hpp"
#include "braidwalk/drift.hpp"
#include "braidwalk/errors.hpp"
#include "braidwalk/free_product.hpp"
#include "braidwalk/graphs.hpp"
#include "braidwalk/montecarlo.hpp"

using namespace braidwalk;

namespace {

uint64_t default_seed() {
  if (const char* env = std::getenv("BRAIDWALK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("BRAIDWALK_SEED is not an unsigned integer");
    }
  }
  return 1;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file " + path);
  f << text;
}

void require_p(double p) {
  if (!(p > 0.0 && p < 0.5))
    throw DomainError("p must lie in the open interval (0, 0.5)");
}

std::vector<double> parse_grid(const std::string& spec) {
  double lo, hi, step;
  char c1, c2;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
      step <= 0)
    throw DomainError("grid must have the form start:stop:step");
  std::vector<double> ps;
  for (double p = lo; p <= hi + 1e-12; p += step) ps.push_back(p);
  return ps;
}

const char* method_name(drift::Method m) {
  switch (m) {
    case drift::Method::ClosedForm: return "closed-form";
    case drift::Method::Solver: return "solver";
    case drift::Method::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

std::string report_rows(const drift::DriftReport& rep) {
  std::string out;
  auto cell = [&](const std::optional<drift::DriftValue>& v) {
    out += ',';
    if (v) out += fmt(v->value);
  };
  auto se_cell = [&](const std::optional<drift::DriftValue>& v) {
    out += ',';
    if (v && v->se > 0) out += fmt(v->se);
  };
  out += rep.family + ',' + std::to_string(rep.k) + ',' + fmt(rep.p);
  cell(rep.gamma_sigma);
  cell(rep.gamma_delta);
  cell(rep.gamma_splus);
  cell(rep.gamma);
  out += ',';
  if (rep.gamma_sigma) out += method_name(rep.gamma_sigma->method);
  se_cell(rep.gamma_sigma);
  se_cell(rep.gamma_delta);
  se_cell(rep.gamma_splus);
  se_cell(rep.gamma);
  out += '\n';
  return out;
}

constexpr const char* kDriftHeader =
    "family,k,p,gamma_sigma,gamma_delta,gamma_splus,gamma,method,"
    "se_sigma,se_delta,se_splus,se_gamma\n";

StepDistribution family_nu(const std::string& family, double p) {
  if (family == "inverse-symmetric") return StepDistribution::inverse_symmetric(p);
  if (family == "positive-symmetric") return StepDistribution::positive_symmetric(p);
  if (family == "uniform") return StepDistribution::uniform();
  throw DomainError("unknown family " + family);
}

int cmd_drift(const std::string& family, double p, const std::string& grid,
              int k, const std::string& out_path) {
  std::vector<double> ps;
  if (!grid.empty())
    ps = parse_grid(grid);
  else
    ps.push_back(p);
  std::string out = kDriftHeader;
  for (double pv : ps) {
    drift::DriftReport rep;
    if (family == "inverse-symmetric") {
      require_p(pv);
      rep = drift::drift_inverse_symmetric(pv);
    } else if (family == "positive-symmetric") {
      require_p(pv);
      rep = drift::drift_positive_symmetric(pv);
    } else if (family == "simple-ak") {
      rep = drift::drift_simple_Ak(k);
    } else {
      throw DomainError("unknown family " + family);
    }
    out += report_rows(rep);
    if (family == "simple-ak") break;  // p plays no role
  }
  write_out(out_path, out);
  return 0;
}

int cmd_simulate(const std::string& family, double p, int k, int n, int trials,
                 uint64_t seed, const std::string& out_path) {
  drift::DriftReport rep;
  if (family == "simple-ak") {
    rep = mc::estimate_drifts(StepDistribution::uniform(),
                              GroupContext::ak(k), n, trials, seed);
  } else {
    if (family != "uniform") require_p(p);
    rep = mc::estimate_drifts(family_nu(family, p), GroupContext::b3(), n,
                              trials, seed);
  }
  rep.family = family;
  rep.p = family == "simple-ak" ? 0.25 : p;
  rep.k = k;
  write_out(out_path, std::string(kDriftHeader) + report_rows(rep));
  return 0;
}

int cmd_green(const std::string& family, double p,
              const std::vector<std::string>& targets,
              const std::string& out_path) {
  if (family != "uniform") require_p(p);
  auto qv = green::solve_q(family_nu(family, p));
  auto ctx = GroupContext::b3_mod_z();
  std::vector<GarsideNormalForm> nf;
  nf.push_back(GarsideNormalForm(ctx));
  for (const auto& w : targets) nf.push_back(normal_form(w, ctx));
  auto rep = green::green_function(qv, nf);
  std::string out = "target,Q,Gamma\n";
  out += "1," + fmt(rep.Q_bar_1) + ',' + fmt(rep.Gamma_1) + '\n';
  for (size_t i = 1; i < rep.table.size(); ++i)
    out += targets[i - 1] + ',' + fmt(rep.table[i].Q) + ',' +
           fmt(rep.table[i].Gamma) + '\n';
  write_out(out_path, out);
  return 0;
}

int cmd_entropy(const std::string& family, double p, int samples, double eps,
                uint64_t seed, const std::string& out_path) {
  if (family != "uniform") require_p(p);
  auto nu = family_nu(family, p);
  auto qv = green::solve_q(nu);
  auto aut = boundary::build_automaton(qv, boundary::exact_R_from_q(qv));
  auto rep = boundary::entropy(aut, nu, samples, eps, seed);
  nlohmann::json j;
  j["family"] = family;
  j["p"] = p;
  j["value"] = rep.value;
  j["stat_se"] = rep.stat_se;
  j["bias_bound"] = rep.bias_bound;
  j["n_samples"] = rep.n_samples;
  j["seed"] = rep.seed;
  write_out(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_export_graph(const std::string& kind, int k, int radius,
                     const std::string& out_path) {
  graphs::LabeledGraph g;
  if (kind == "b3z")
    g = graphs::cayley_ball(GroupContext::b3_mod_z(), radius);
  else if (kind == "akz")
    g = graphs::cayley_ball(GroupContext::ak_mod_z(k), radius);
  else if (kind == "schreier")
    g = graphs::schreier_ball(k, radius);
  else if (kind == "free-product")
    g = graphs::fp_cayley_ball(k, radius);
  else
    throw DomainError("unknown graph kind " + kind);
  write_out(out_path, graphs::edge_list(g));
  return 0;
}

// ---- validation gates ----

struct Gate {
  std::string name;
  bool pass = true;
  std::string detail;
};

double rtilde_c_closed(double p) {
  if (std::abs(p - 0.25) < 1e-12) return 0.25;
  return (4 * p - 3 + std::sqrt(16 * p * p - 8 * p + 5)) / (4 * (4 * p - 1));
}

int cmd_validate(bool quick, bool flip_gamma_delta, uint64_t seed) {
  std::vector<Gate> gates;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    gates.push_back({name, ok, detail});
  };

  {  // closed forms collapse at the uniform point
    auto inv = drift::drift_inverse_symmetric(0.25);
    auto pos = drift::drift_positive_symmetric(0.25);
    auto ak = drift::drift_simple_Ak(3);
    const bool ok = std::abs(inv.gamma_sigma->value - 0.25) < 1e-9 &&
                    std::abs(inv.gamma->value - 0.25) < 1e-9 &&
                    std::abs(pos.gamma_sigma->value - 0.25) < 1e-9 &&
                    std::abs(pos.gamma->value - 0.25) < 1e-9 &&
                    std::abs(ak.gamma_sigma->value - 0.25) < 1e-9;
    check("uniform-point-closed-forms", ok, "all gammas = 1/4");
  }

  {  // free-product solver vs printed closed form
    double worst = 0;
    for (double p = 0.05; p < 0.46; p += 0.05) {
      auto w = fp::harmonic_weights(
          fp::solve_fp_passage(3, fp::FPMeasure::factor_symmetric(p)));
      worst = std::max(worst, std::abs(w.r[0][0] - rtilde_c_closed(p)));
    }
    check("fp-rtilde-closed-form", worst < 1e-9, "worst gap " + fmt(worst));
  }

  {  // exact fixed points of the uniform traffic system
    std::array<double, 8> mu, half, quarter;
    mu.fill(0.125);
    half.fill(0.5);
    quarter.fill(0.25);
    double worst = 0;
    for (auto y : {half, quarter}) {
      auto r = green::eval_traffic_rhs(y, mu);
      for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(r[i] - y[i]));
    }
    check("traffic-constant-fixed-points", worst < 1e-15, "residual " + fmt(worst));
  }

  {  // Monte Carlo triangle for the drifts; the sign-flip hook lands here
    const int trials = quick ? 100 : 200;
    std::vector<double> grid = quick ? std::vector<double>{0.1, 0.3}
                                     : std::vector<double>{0.1, 0.25, 0.3, 0.4};
    bool ok = true;
    std::string detail;
    for (const char* fam : {"inverse-symmetric", "positive-symmetric"}) {
      for (double p : grid) {
        auto closed = std::string(fam) == "inverse-symmetric"
                          ? drift::drift_inverse_symmetric(p)
                          : drift::drift_positive_symmetric(p);
        auto mcrep = mc::estimate_drifts(family_nu(fam, p), GroupContext::b3(),
                                         2000, trials, seed);
        double target_gd = closed.gamma_delta->value;
        if (flip_gamma_delta) target_gd = -target_gd;
        const bool gs_ok =
            std::abs(mcrep.gamma_sigma->value - closed.gamma_sigma->value) <=
            3 * mcrep.gamma_sigma->se + 1e-3;
        const bool gd_ok =
            std::abs(mcrep.gamma_delta->value - target_gd) <=
            3 * mcrep.gamma_delta->se + 1e-3;
        const bool sign_ok = std::string(fam) != "inverse-symmetric" ||
                             closed.gamma_delta->value < 0.0;
        if (!(gs_ok && gd_ok && sign_ok)) {
          ok = false;
          detail = std::string(fam) + " p=" + fmt(p) +
                   (gd_ok ? "" : " gamma_delta off");
        }
      }
    }
    check("drift-triangle-mc", ok, ok ? "all grid points within 3 SE" : detail);
  }

  {  // Green function vs mean visits to the identity
    auto qv = green::solve_q(StepDistribution::uniform());
    auto rep = green::green_function(qv, {});
    auto vis = mc::estimate_visits_to_identity(StepDistribution::uniform(),
                                               quick ? 20000 : 100000, 800, seed);
    const bool ok =
        std::abs(vis.estimate - rep.Gamma_1) <= 3 * vis.standard_error;
    check("green-gamma1-vs-visits", ok,
          "Gamma(1) " + fmt(rep.Gamma_1) + " mc " + fmt(vis.estimate));
  }

  {  // boundary cylinder consistency
    double worst = 0;
    for (auto nu : {StepDistribution::uniform(),
                    StepDistribution::positive_symmetric(0.3),
                    StepDistribution::inverse_symmetric(0.35)}) {
      auto qv = green::solve_q(nu);
      auto aut = boundary::build_automaton(qv, boundary::exact_R_from_q(qv));
      std::vector<std::vector<Syllable>> words;
      for (int t = 0; t < 4; ++t) words.push_back({boundary::t_syllable(t)});
      for (int depth = 0; depth < 4; ++depth) {
        std::vector<std::vector<Syllable>> next;
        for (auto& w : words) {
          double total = 0;
          for (int s : boundary::t_successors(boundary::t_index(w.back()))) {
            auto ext = w;
            ext.push_back(boundary::t_syllable(s));
            total += boundary::cylinder_measure(aut, ext);
            next.push_back(std::move(ext));
          }
          worst = std::max(
              worst, std::abs(total - boundary::cylinder_measure(aut, w)));
        }
        words = std::move(next);
      }
    }
    check("boundary-kolmogorov", worst < 1e-12, "worst gap " + fmt(worst));
  }

  {  // exact derivative pins and the entropy sandwich, uniform family
    auto nu = StepDistribution::uniform();
    auto qv = green::solve_q(nu);
    auto aut = boundary::build_automaton(qv, boundary::exact_R_from_q(qv));
    auto ctx = GroupContext::b3_mod_z();
    auto xi = boundary::sample_boundary(aut, 64, seed);
    GarsideNormalForm u1(ctx), delta(ctx);
    u1.append_syllable(xi.syllables[0]);
    delta.append_delta(1);
    const double r1 = boundary::rn_derivative(aut, u1, xi, 1e-10).value;
    const double rd = boundary::rn_derivative(aut, delta, xi, 1e-10).value;
    auto ent = boundary::entropy(aut, nu, quick ? 200 : 2000, 1e-9, seed);
    auto conv = mc::exact_convolution(nu, ctx, 8);
    const bool ok = std::abs(r1 - 2.0) < 1e-12 && std::abs(rd - 1.0) < 1e-12 &&
                    ent.value > 0 && ent.value <= conv.entropy_rate(8);
    check("boundary-derivative-entropy", ok,
          "h " + fmt(ent.value) + " <= " + fmt(conv.entropy_rate(8)));
  }

  {  // normal form vs the matrix-representation oracle
    const int pairs = quick ? 2000 : 20000;
    std::mt19937_64 rng(derive_seed(seed, 99));
    const char* letters = "abAB";
    int bad = 0;
    auto ctx = GroupContext::b3_mod_z();
    for (int i = 0; i < pairs; ++i) {
      std::string w1, w2;
      for (int j = 0; j < 10; ++j) w1.push_back(letters[rng() % 4]);
      w2 = rng() % 2 ? w1 : std::string();
      if (!w2.empty())
        for (int j = 0; j < 4; ++j) w2[rng() % w2.size()] = letters[rng() % 4];
      else
        for (int j = 0; j < 10; ++j) w2.push_back(letters[rng() % 4]);
      const bool same_nf = normal_form(w1, ctx) == normal_form(w2, ctx);
      if (same_nf != mc::burau_oracle(w1, w2, true)) ++bad;
    }
    check("burau-oracle-agreement", bad == 0,
          fmt(pairs) + " random pairs, " + fmt(bad) + " mismatches");
  }

  {  // Schreier balls against free-product balls
    bool ok = true;
    for (int k : {3, 4, 5}) {
      const int r = quick ? 6 : (k == 3 ? 8 : 7);
      ok = ok && graphs::wl_hash(graphs::schreier_ball(k, r)) ==
                     graphs::wl_hash(graphs::fp_cayley_ball(k, r));
    }
    check("schreier-ball-isomorphism", ok, "k = 3, 4, 5");
  }

  bool all = true;
  for (const auto& g : gates) {
    std::printf("%-32s %s  (%s)\n", g.name.c_str(), g.pass ? "PASS" : "FAIL",
                g.detail.c_str());
    all = all && g.pass;
  }
  std::printf("%d/%zu gates passed\n",
              static_cast<int>(std::count_if(gates.begin(), gates.end(),
                                             [](const Gate& g) { return g.pass; })),
              gates.size());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random walks on B3 and dihedral Artin groups"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  app.add_option("--seed", seed, "base random seed");
  app.set_config("--config", "", "config file mirroring the flags");

  std::string family = "inverse-symmetric", grid, out_path, kind = "b3z";
  double p = 0.25, eps = 1e-9;
  int k = 3, n = 2000, trials = 200, samples = 1000, radius = 6;
  std::vector<std::string> targets;
  bool quick = false, flip = false;

  auto* d = app.add_subcommand("drift", "closed-form/solver drift table");
  d->add_option("--family", family, "inverse-symmetric | positive-symmetric | simple-ak");
  d->add_option("--p", p, "parameter of the step distribution");
  d->add_option("--p-grid", grid, "start:stop:step");
  d->add_option("--k", k, "number of strands parameter for simple-ak");
  d->add_option("--out", out_path, "output file (default stdout)");

  auto* s = app.add_subcommand("simulate", "Monte Carlo drift estimates");
  s->add_option("--family", family, "family or uniform");
  s->add_option("--p", p, "");
  s->add_option("--k", k, "");
  s->add_option("--n", n, "walk length");
  s->add_option("--trials", trials, "");
  s->add_option("--out", out_path, "");

  auto* g = app.add_subcommand("green", "first-passage and Green values");
  g->add_option("--family", family, "family or uniform");
  g->add_option("--p", p, "");
  g->add_option("--target", targets, "target words, e.g. a ab aabb");
  g->add_option("--out", out_path, "");

  auto* e = app.add_subcommand("entropy", "boundary entropy estimate (JSON)");
  e->add_option("--family", family, "family or uniform");
  e->add_option("--p", p, "");
  e->add_option("--samples", samples, "boundary samples");
  e->add_option("--eps", eps, "certificate target width");
  e->add_option("--out", out_path, "");

  auto* x = app.add_subcommand("export-graph", "edge lists of Cayley/Schreier balls");
  x->add_option("--kind", kind, "b3z | akz | schreier | free-product");
  x->add_option("--k", k, "");
  x->add_option("--radius", radius, "");
  x->add_option("--out", out_path, "");

  auto* v = app.add_subcommand("validate", "consistency gates");
  v->add_flag("--quick", quick, "fast subset");
  v->add_flag("--flip-gamma-delta", flip,
              "self-test hook: flip the closed-form gamma_delta sign");

  CLI11_PARSE(app, argc, argv);

  try {
    if (d->parsed()) return cmd_drift(family, p, grid, k, out_path);
    if (s->parsed()) return cmd_simulate(family, p, k, n, trials, seed, out_path);
    if (g->parsed()) return cmd_green(family, p, targets, out_path);
    if (e->parsed()) return cmd_entropy(family, p, samples, eps, seed, out_path);
    if (x->parsed()) return cmd_export_graph(kind, k, radius, out_path);
    if (v->parsed()) return cmd_validate(quick, flip, seed);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
