#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "braidwalk/free_product.hpp"
#include "braidwalk/group.hpp"

using namespace braidwalk;
using namespace braidwalk::fp;

namespace {

// Closed form for the factor-symmetric family on Z/3 * Z/3:
// r(c) = (4p - 3 + sqrt(16p^2 - 8p + 5)) / (4(4p - 1)), r(c^2) = 1/2 - r(c).
double rtilde_c_closed(double p) {
  if (std::abs(p - 0.25) < 1e-12) return 0.25;
  return (4 * p - 3 + std::sqrt(16 * p * p - 8 * p + 5)) / (4 * (4 * p - 1));
}

double gamma_sigma_closed(double p) {
  return (-1 + std::sqrt(16 * p * p - 8 * p + 5)) / 4;
}

}  // namespace

TEST_CASE("solver hits the closed form on a p-grid") {
  for (double p : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45}) {
    auto w = harmonic_weights(solve_fp_passage(3, FPMeasure::factor_symmetric(p)));
    const double rc = rtilde_c_closed(p);
    CHECK(w.r[0][0] == doctest::Approx(rc).epsilon(1e-9));
    CHECK(w.r[1][0] == doctest::Approx(rc).epsilon(1e-9));
    CHECK(w.r[0][1] == doctest::Approx(0.5 - rc).epsilon(1e-9));
    // Normalization: weights over all syllable values sum to 1.
    CHECK(w.side_total(0) + w.side_total(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(2 * (w.r[0][0] + w.r[0][1]) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pinned values at p = 0.3 and the uniform point") {
  auto w = harmonic_weights(solve_fp_passage(3, FPMeasure::factor_symmetric(0.3)));
  CHECK(w.r[0][0] == doctest::Approx(0.262469).epsilon(1e-5));
  CHECK(w.r[0][1] == doctest::Approx(0.237531).epsilon(1e-5));

  auto wu = harmonic_weights(solve_fp_passage(3, FPMeasure::factor_symmetric(0.25)));
  CHECK(wu.r[0][0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(wu.r[0][1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("degenerate one-factor rotation gives indicator passage values") {
  auto sol = solve_fp_passage(3, {1.0, 0.0, 0.0, 0.0});
  CHECK(sol.q[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.q[0][1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.q[1][0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.q[1][1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("passage probabilities are interior for irreducible measures") {
  for (auto mu : {FPMeasure::factor_symmetric(0.1), FPMeasure{0.4, 0.1, 0.3, 0.2},
                  FPMeasure{0.1, 0.2, 0.3, 0.4}}) {
    for (int k : {3, 4, 5, 6}) {
      auto sol = solve_fp_passage(k, mu);
      for (int s = 0; s < 2; ++s)
        for (double v : sol.q[s]) {
          CHECK(v > 0.0);
          CHECK(v < 1.0);
        }
    }
  }
}

TEST_CASE("product of the two side sums is 1") {
  for (auto mu : {FPMeasure::factor_symmetric(0.3), FPMeasure{0.4, 0.1, 0.3, 0.2},
                  FPMeasure{0.15, 0.35, 0.05, 0.45}}) {
    for (int k : {3, 4, 5}) {
      auto sol = solve_fp_passage(k, mu);
      CHECK(sol.side_sum(0) * sol.side_sum(1) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("drift equals the closed form for the symmetric family") {
  for (double p : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45}) {
    const double g = fp_drift(3, FPMeasure::factor_symmetric(p));
    CHECK(g == doctest::Approx(gamma_sigma_closed(p)).epsilon(1e-9));
    // Same value through the aggregated syllable weights.
    auto w = harmonic_weights(solve_fp_passage(3, FPMeasure::factor_symmetric(p)));
    CHECK(g == doctest::Approx(p * w.r_agg(1) + (0.5 - p) * w.r_agg(2)).epsilon(1e-12));
  }
  CHECK(fp_drift(3, FPMeasure::factor_symmetric(0.25)) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(fp_drift(3, FPMeasure::factor_symmetric(0.3)) ==
        doctest::Approx(0.2524937810560445).epsilon(1e-9));
}

TEST_CASE("general-k drift matches Monte Carlo") {
  for (int k : {4, 5}) {
    const double g = fp_drift(k, FPMeasure{});
    auto mc = estimate_fp_drift(k, FPMeasure{}, 5000, 400, 20260824u);
    CHECK(std::abs(mc.estimate - g) <= 3 * mc.standard_error);
  }
  // An asymmetric measure as well.
  const FPMeasure mu{0.35, 0.15, 0.2, 0.3};
  const double g = fp_drift(4, mu);
  auto mc = estimate_fp_drift(4, mu, 5000, 400, 7u);
  CHECK(std::abs(mc.estimate - g) <= 3 * mc.standard_error);
}

TEST_CASE("Monte Carlo estimator is reproducible") {
  auto a = estimate_fp_drift(3, FPMeasure{}, 500, 50, 42u);
  auto b = estimate_fp_drift(3, FPMeasure{}, 500, 50, 42u);
  CHECK(a.estimate == b.estimate);
  CHECK(a.standard_error == b.standard_error);
}

TEST_CASE("projection to the free product") {
  auto ctx = GroupContext::b3_mod_z();
  CHECK(schreier_project(normal_form("", ctx)).syllables.empty());
  CHECK(schreier_project(normal_form("aba", ctx)).syllables.empty());

  auto w = schreier_project(normal_form("aab", ctx));  // syllables [a, ab]
  REQUIRE(w.syllables.size() == 2);
  CHECK(w.syllables[0] == std::pair<int, int>{0, 1});
  CHECK(w.syllables[1] == std::pair<int, int>{1, 2});

  // Class members g and g Delta project to the same word.
  std::mt19937_64 rng(3u);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    GarsideNormalForm x(ctx);
    for (int i = 0; i < 20; ++i) x.append_generator(static_cast<Gen>(pick(rng)));
    auto xd = x;
    xd.append_delta(1);
    auto p1 = schreier_project(x);
    auto p2 = schreier_project(xd);
    CHECK(p1.syllables == p2.syllables);
  }
}

TEST_CASE("projected walk moves by single free-product generators") {
  auto ctx = GroupContext::b3_mod_z();
  std::mt19937_64 rng(11u);
  std::uniform_int_distribution<int> pick(0, 3);
  GarsideNormalForm x(ctx);
  auto prev = schreier_project(x);
  long long counts[4] = {0, 0, 0, 0};
  const int steps = 100000;
  for (int i = 0; i < steps; ++i) {
    x.append_generator(static_cast<Gen>(pick(rng)));
    auto cur = schreier_project(x);
    int found = -1;
    for (int g = 0; g < 4; ++g) {
      auto trial = prev;
      trial.step(g);
      if (trial.syllables == cur.syllables) {
        found = g;
        break;
      }
    }
    REQUIRE(found >= 0);
    ++counts[found];
    prev = cur;
  }
  // Uniform walk generators project to uniform free-product steps.
  for (int g = 0; g < 4; ++g) {
    const double freq = static_cast<double>(counts[g]) / steps;
    const double se = std::sqrt(0.25 * 0.75 / steps);
    CHECK(std::abs(freq - 0.25) <= 4 * se);
  }
}
