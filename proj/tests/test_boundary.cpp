#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "braidwalk/boundary.hpp"
#include "braidwalk/drift.hpp"
#include "braidwalk/errors.hpp"
#include "braidwalk/montecarlo.hpp"

using namespace braidwalk;
using namespace braidwalk::boundary;

namespace {

RTAutomaton automaton_for(const StepDistribution& nu) {
  auto qv = green::solve_q(nu);
  return build_automaton(qv, exact_R_from_q(qv));
}

// All chained syllable words of the given length.
std::vector<std::vector<Syllable>> chained_words(int length) {
  std::vector<std::vector<Syllable>> words;
  for (int t = 0; t < 4; ++t) words.push_back({t_syllable(t)});
  for (int d = 1; d < length; ++d) {
    std::vector<std::vector<Syllable>> next;
    for (auto& w : words)
      for (int s : t_successors(t_index(w.back()))) {
        auto ext = w;
        ext.push_back(t_syllable(s));
        next.push_back(std::move(ext));
      }
    words = std::move(next);
  }
  return words;
}

std::vector<Syllable> random_chained(std::mt19937_64& rng, int length) {
  std::vector<Syllable> w{t_syllable(static_cast<int>(rng() % 4))};
  while (static_cast<int>(w.size()) < length) {
    auto succ = t_successors(t_index(w.back()));
    w.push_back(t_syllable(succ[rng() % 2]));
  }
  return w;
}

}  // namespace

TEST_CASE("syllable alphabet indexing round-trips and chains") {
  for (int t = 0; t < 4; ++t) {
    CHECK(t_index(t_syllable(t)) == t);
    for (int s : t_successors(t))
      CHECK(t_syllable(s).first == t_syllable(t).last());
  }
  CHECK_THROWS_AS(t_index(Syllable{0, 3}), ChainError);
}

TEST_CASE("first-syllable law: q-vector route equals the closed forms") {
  auto pos = exact_R_from_q(green::solve_q(StepDistribution::positive_symmetric(0.3)));
  auto pos_cf = exact_R_positive_symmetric(0.3);
  for (int t = 0; t < 4; ++t)
    CHECK(pos[t] == doctest::Approx(pos_cf[t]).epsilon(1e-10));
  for (double p : {0.1, 0.35, 0.45}) {
    auto inv = exact_R_from_q(green::solve_q(StepDistribution::inverse_symmetric(p)));
    auto inv_cf = exact_R_inverse_symmetric(p);
    double sum = 0.0;
    for (int t = 0; t < 4; ++t) {
      CHECK(inv[t] == doctest::Approx(inv_cf[t]).epsilon(1e-10));
      sum += inv[t];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    // a <-> ba and b <-> ab share their mass in this family
    CHECK(inv[0] == doctest::Approx(inv[3]).epsilon(1e-12));
    CHECK(inv[1] == doctest::Approx(inv[2]).epsilon(1e-12));
  }
  // the uniform law is flat
  auto uni = exact_R_from_q(green::solve_q(StepDistribution::uniform()));
  for (int t = 0; t < 4; ++t) CHECK(uni[t] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(exact_R_inverse_symmetric(0.5), DomainError);
}

TEST_CASE("first-syllable frequencies of the walk match R") {
  for (auto nu : {StepDistribution::positive_symmetric(0.3),
                  StepDistribution::inverse_symmetric(0.35)}) {
    auto exact = exact_R_from_q(green::solve_q(nu));
    double se = 0.0;
    auto est = estimate_R(nu, 2000, 1500, 41, &se);
    CHECK(se > 0.0);
    for (int t = 0; t < 4; ++t)
      CHECK(std::abs(est[t] - exact[t]) <= 3 * se + 1e-2);
  }
}

TEST_CASE("automaton constants: positivity, contraction, pinned values") {
  auto uni = automaton_for(StepDistribution::uniform());
  CHECK(uni.delta == doctest::Approx(0.3904).epsilon(2e-3));
  CHECK(uni.K_const == doctest::Approx(2.1712).epsilon(2e-3));
  auto pos = automaton_for(StepDistribution::positive_symmetric(0.3));
  CHECK(pos.delta == doctest::Approx(0.2639).epsilon(2e-3));
  CHECK(pos.K_const == doctest::Approx(3.5249).epsilon(2e-3));
  for (const auto& aut : {uni, pos}) {
    CHECK(aut.delta > 0.0);
    CHECK(aut.delta < 1.0);
    CHECK(aut.K_const > 0.0);
    CHECK(aut.iota_invariant_R());
  }
  CHECK_FALSE(automaton_for(StepDistribution::inverse_symmetric(0.35)).iota_invariant_R());
}

TEST_CASE("build_automaton rejects degenerate input") {
  auto qv = green::solve_q(StepDistribution::uniform());
  auto R = exact_R_from_q(qv);
  auto bad_q = qv;
  bad_q.q[3] = 0.0;
  CHECK_THROWS_AS(build_automaton(bad_q, R), PositivityError);
  auto bad_R = R;
  bad_R[0] = 0.0;
  CHECK_THROWS_AS(build_automaton(qv, bad_R), PositivityError);
  auto off_R = R;
  off_R[0] += 0.1;
  CHECK_THROWS_AS(build_automaton(qv, off_R), DomainError);
}

TEST_CASE("cylinder masses form a consistent projective family") {
  for (auto nu : {StepDistribution::uniform(),
                  StepDistribution::positive_symmetric(0.3),
                  StepDistribution::inverse_symmetric(0.35)}) {
    auto aut = automaton_for(nu);
    CHECK(cylinder_measure(aut, std::vector<Syllable>{}) == 1.0);
    double root = 0.0;
    for (int t = 0; t < 4; ++t) {
      std::vector<Syllable> w{t_syllable(t)};
      CHECK(cylinder_measure(aut, w) == doctest::Approx(aut.R[t]).epsilon(1e-14));
      root += cylinder_measure(aut, w);
    }
    CHECK(root == doctest::Approx(1.0).epsilon(1e-12));
    // Kolmogorov: the two one-step extensions of any word carry its mass.
    for (int len = 1; len <= 4; ++len)
      for (const auto& w : chained_words(len)) {
        double total = 0.0;
        for (int s : t_successors(t_index(w.back()))) {
          auto ext = w;
          ext.push_back(t_syllable(s));
          total += cylinder_measure(aut, ext);
        }
        CHECK(total == doctest::Approx(cylinder_measure(aut, w)).epsilon(1e-12));
      }
  }
  auto aut = automaton_for(StepDistribution::uniform());
  std::vector<Syllable> broken{t_syllable(0), t_syllable(1)};  // a . b
  CHECK_THROWS_AS(cylinder_measure(aut, broken), ChainError);
}

TEST_CASE("sampler: chaining, determinism, and the first-syllable law") {
  auto aut = automaton_for(StepDistribution::inverse_symmetric(0.35));
  auto w1 = sample_boundary(aut, 40, 9);
  auto w2 = sample_boundary(aut, 40, 9);
  REQUIRE(w1.syllables.size() == 40);
  CHECK(w1.syllables == w2.syllables);
  // growing in two steps gives the same word as growing at once
  auto w3 = make_boundary_word({}, aut, 9);
  w3.ensure(12);
  w3.ensure(40);
  CHECK(w3.syllables == w1.syllables);
  std::array<int, 4> first{};
  const int trials = 4000;
  for (int i = 0; i < trials; ++i) {
    auto w = sample_boundary(aut, 6, derive_seed(123, i));
    for (size_t j = 1; j < w.syllables.size(); ++j)
      REQUIRE(w.syllables[j].first == w.syllables[j - 1].last());
    first[t_index(w.syllables[0])]++;
  }
  for (int t = 0; t < 4; ++t) {
    const double f = static_cast<double>(first[t]) / trials;
    const double se = std::sqrt(aut.R[t] * (1 - aut.R[t]) / trials);
    CHECK(std::abs(f - aut.R[t]) <= 3 * se);
  }
  // a bare prefix cannot grow
  auto fixed = make_boundary_word({t_syllable(0)});
  CHECK_THROWS_AS(fixed.ensure(2), DepthExceeded);
  CHECK_THROWS_AS(make_boundary_word({t_syllable(0), t_syllable(1)}), ChainError);
}

TEST_CASE("sampler cylinder frequencies match the measure") {
  // The hidden automaton state matters here: for the inverse-symmetric
  // family the syllable sequence is not first-order Markov.
  auto aut = automaton_for(StepDistribution::inverse_symmetric(0.35));
  std::map<std::vector<int>, int> counts;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    auto w = sample_boundary(aut, 3, derive_seed(7, i));
    counts[{t_index(w.syllables[0]), t_index(w.syllables[1]),
            t_index(w.syllables[2])}]++;
  }
  for (const auto& w : chained_words(3)) {
    const double pred = cylinder_measure(aut, w);
    std::vector<int> key;
    for (auto s : w) key.push_back(t_index(s));
    const double f = static_cast<double>(counts[key]) / trials;
    const double se = std::sqrt(pred * (1 - pred) / trials);
    CHECK(std::abs(f - pred) <= 3.5 * se);
  }
}

TEST_CASE("boundary action: pinned triples") {
  auto ctx = GroupContext::b3_mod_z();
  auto aut = automaton_for(StepDistribution::uniform());
  auto xi = sample_boundary(aut, 64, 31);
  auto id_tr = stable_action(GarsideNormalForm(ctx), xi);
  CHECK(id_tr.v.empty());
  CHECK(id_tr.l == 1);
  CHECK_FALSE(id_tr.twisted);
  // acting by the first syllable of xi shifts it away
  GarsideNormalForm u1(ctx);
  u1.append_syllable(xi.syllables[0]);
  auto sh = stable_action(u1, xi);
  CHECK(sh.v.empty());
  CHECK(sh.l == 2);
  CHECK_FALSE(sh.twisted);
  // acting by Delta only twists
  GarsideNormalForm delta(ctx);
  delta.append_delta(1);
  auto tw = stable_action(delta, xi);
  CHECK(tw.v.empty());
  CHECK(tw.l == 1);
  CHECK(tw.twisted);
  // a generic element stabilizes with a bounded head
  auto g = normal_form("abAA", ctx);
  auto tr = stable_action(g, xi);
  CHECK(tr.l >= 1);
  for (size_t i = 1; i < tr.v.size(); ++i)
    CHECK(tr.v[i].first == tr.v[i - 1].last());
  if (!tr.v.empty()) {
    Syllable expect = xi.syllables[tr.l - 1];
    if (tr.twisted) expect = iota(expect);
    CHECK(tr.v.back().last() == expect.first);
  }
}

TEST_CASE("derivative certificates: exact values for the uniform family") {
  auto ctx = GroupContext::b3_mod_z();
  auto aut = automaton_for(StepDistribution::uniform());
  auto xi = sample_boundary(aut, 64, 11);
  GarsideNormalForm u1(ctx);
  u1.append_syllable(xi.syllables[0]);
  auto c1 = rn_derivative(aut, u1, xi, 1e-10);
  CHECK(c1.value == doctest::Approx(2.0).epsilon(1e-12));
  GarsideNormalForm delta(ctx);
  delta.append_delta(1);
  auto cd = rn_derivative(aut, delta, xi, 1e-10);
  CHECK(cd.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rn_derivative(aut, GarsideNormalForm(ctx), xi, 1e-10).value == 1.0);
}

TEST_CASE("certified intervals nest and shrink at the contraction rate") {
  auto ctx = GroupContext::b3_mod_z();
  for (auto nu : {StepDistribution::uniform(),
                  StepDistribution::inverse_symmetric(0.35)}) {
    auto aut = automaton_for(nu);
    auto xi = sample_boundary(aut, 8, 21);
    auto g = normal_form("abA", ctx);
    std::vector<CertifiedValue> cv;
    for (double eps : {1e-3, 1e-6, 1e-9, 1e-12})
      cv.push_back(rn_derivative(aut, g, xi, eps));
    for (size_t i = 0; i + 1 < cv.size(); ++i) {
      CHECK(cv[i + 1].half_width <= cv[i].half_width);
      CHECK(cv[i + 1].n_used >= cv[i].n_used);
      // the tighter interval sits inside the looser one
      CHECK(cv[i + 1].value - cv[i + 1].half_width >=
            cv[i].value - cv[i].half_width - 1e-15);
      CHECK(cv[i + 1].value + cv[i + 1].half_width <=
            cv[i].value + cv[i].half_width + 1e-15);
      CHECK(cv[i].half_width <= 1e-3 * std::pow(1e-3, static_cast<double>(i)));
    }
    // depth grows linearly in -log(target), slope 1/|log(1-delta^2)|
    // (skipped when the certificate collapsed to an exact value)
    if (cv[3].half_width > 0.0) {
      const double slope =
          static_cast<double>(cv[3].n_used - cv[1].n_used) / std::log(1e6);
      const double expect = -1.0 / std::log(1.0 - aut.delta * aut.delta);
      CHECK(slope == doctest::Approx(expect).epsilon(0.35));
    }
  }
}

TEST_CASE("matrix products collapse to rank one at the certified rate") {
  auto aut = automaton_for(StepDistribution::inverse_symmetric(0.35));
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 30;
    auto w = random_chained(rng, n);
    std::array<double, 4> P{1, 0, 0, 1};
    for (int i = 0; i < n; ++i) {
      const auto m = aut.mat(t_index(w[i]));
      P = {P[0] * m[0] + P[1] * m[2], P[0] * m[1] + P[1] * m[3],
           P[2] * m[0] + P[3] * m[2], P[2] * m[1] + P[3] * m[3]};
      const double scale = std::max({P[0], P[1], P[2], P[3]});
      for (double& x : P) x /= scale;
      if (i == 0) continue;
      // the two column ratios agree within the oscillation bound
      const double bound =
          aut.K_const * std::pow(1.0 - aut.delta * aut.delta, i);
      CHECK(std::abs(P[2] / P[0] - P[3] / P[1]) <= 2 * bound + 1e-14);
    }
  }
}

TEST_CASE("the derivative is harmonic: mean value over one step") {
  auto ctx = GroupContext::b3_mod_z();
  std::mt19937_64 rng(77);
  const std::string gens = "abAB";
  for (auto nu : {StepDistribution::uniform(),
                  StepDistribution::inverse_symmetric(0.35)}) {
    auto aut = automaton_for(nu);
    auto xi = sample_boundary(aut, 64, 5);
    std::array<GarsideNormalForm, 4> step = {
        normal_form("a", ctx), normal_form("b", ctx), normal_form("A", ctx),
        normal_form("B", ctx)};
    const std::array<double, 4> w = {nu.a, nu.b, nu.a_inv, nu.b_inv};
    for (int rep = 0; rep < 25; ++rep) {
      std::string word;
      const int len = static_cast<int>(rng() % 4);
      for (int i = 0; i < len; ++i) word.push_back(gens[rng() % 4]);
      auto x = normal_form(word, ctx);
      const double kx = rn_derivative(aut, x, xi, 1e-11).value;
      double mean = 0.0;
      for (int s = 0; s < 4; ++s)
        mean += w[s] * rn_derivative(aut, multiply(x, step[s]), xi, 1e-11).value;
      CHECK(mean == doctest::Approx(kx).epsilon(1e-8));
    }
  }
}

TEST_CASE("two routes to the harmonic function agree") {
  auto ctx = GroupContext::b3_mod_z();
  for (auto nu : {StepDistribution::uniform(),
                  StepDistribution::inverse_symmetric(0.35)}) {
    auto qv = green::solve_q(nu);
    auto aut = build_automaton(qv, exact_R_from_q(qv));
    auto xi = sample_boundary(aut, 64, 13);
    for (const char* gw : {"a", "b", "A", "B", "ab", "aB", "Ab", "abA",
                           "aabb", "ABab"}) {
      auto g = normal_form(gw, ctx);
      const double k_aut = harmonic_function(aut, g, xi, 1e-11).value;
      const double k_green = harmonic_function_green(qv, g, xi, 14);
      CHECK(k_green == doctest::Approx(k_aut).epsilon(5e-4));
    }
  }
}

TEST_CASE("entropy: value, sandwich, and symmetry") {
  auto ctx = GroupContext::b3_mod_z();
  // Uniform: all certificates are exact and h = gamma_sigma log 2.
  auto uni = StepDistribution::uniform();
  auto aut = automaton_for(uni);
  auto rep = entropy(aut, uni, 200, 1e-9, 3);
  CHECK(rep.value == doctest::Approx(0.25 * std::log(2.0)).epsilon(1e-9));
  CHECK(rep.stat_se <= 1e-12);
  CHECK(rep.bias_bound <= 1e-7);
  // Kingman sandwich against the exact convolution entropy rate.
  auto conv = mc::exact_convolution(uni, ctx, 8);
  CHECK(rep.value >= 0.0);
  CHECK(rep.value <= conv.entropy_rate(8));
  // Swapping a <-> b maps p to 1/2 - p and preserves the entropy.
  auto lo = StepDistribution::inverse_symmetric(0.1);
  auto hi = StepDistribution::inverse_symmetric(0.4);
  auto rl = entropy(automaton_for(lo), lo, 150, 1e-8, 17);
  auto rh = entropy(automaton_for(hi), hi, 150, 1e-8, 19);
  CHECK(rl.value > 0.0);
  CHECK(std::abs(rl.value - rh.value) <=
        3 * std::sqrt(rl.stat_se * rl.stat_se + rh.stat_se * rh.stat_se) +
            rl.bias_bound + rh.bias_bound);
  auto cl = mc::exact_convolution(lo, ctx, 8);
  CHECK(rl.value <= cl.entropy_rate(8));
}

TEST_CASE("four-state fixture: tensor symmetry and cylinder agreement") {
  std::mt19937_64 rng(13);
  for (auto nu : {StepDistribution::uniform(),
                  StepDistribution::inverse_symmetric(0.35)}) {
    auto aut = automaton_for(nu);
    FourStateAutomaton four{&aut};
    // entrywise symmetry M(t)[i][j] = M(iota t)[3-i][3-j]
    for (int t = 0; t < 4; ++t) {
      auto m = four.mat(t);
      auto mi = four.mat(t ^ 1);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          CHECK(m[i][j] == doctest::Approx(mi[3 - i][3 - j]).epsilon(1e-14));
    }
    auto run = [&](std::array<double, 4> row, const std::vector<Syllable>& w) {
      for (size_t i = 0; i + 1 < w.size(); ++i) {
        auto m = four.mat(t_index(w[i]));
        std::array<double, 4> next{};
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k) next[k] += row[j] * m[j][k];
        row = next;
      }
      auto b = four.beta(t_index(w.back()));
      double val = 0.0;
      for (int j = 0; j < 4; ++j) val += row[j] * b[j];
      return val;
    };
    const bool iota_inv = aut.iota_invariant_R();
    for (int rep = 0; rep < 1000; ++rep) {
      auto w = random_chained(rng, 1 + static_cast<int>(rng() % 6));
      std::vector<Syllable> wi;
      for (auto s : w) wi.push_back(iota(s));
      // word-level symmetry: alpha . w equals iota(alpha) . iota(w)
      CHECK(run(four.alpha(), w) ==
            doctest::Approx(run(four.iota_alpha(), wi)).epsilon(1e-12));
      // starting from automaton state 1 with the right letter reproduces
      // the 2x2 cylinder mass
      std::array<double, 4> start{};
      start[w.front().first] = 1.0;
      CHECK(run(start, w) ==
            doctest::Approx(cylinder_measure(aut, w)).epsilon(1e-12));
      // for an iota-invariant law the two automaton states can be pooled;
      // alpha carries the a-start words and iota(alpha) the b-start ones
      if (iota_inv) {
        auto a0 = w.front().first == 0 ? four.alpha() : four.iota_alpha();
        CHECK(0.5 * run(a0, w) ==
              doctest::Approx(cylinder_measure(aut, w)).epsilon(1e-12));
      }
    }
  }
}
