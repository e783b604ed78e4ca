#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "braidwalk/group.hpp"
#include "braidwalk/stats.hpp"

namespace braidwalk::fp {

// Step distribution on the generators {c, c^-1, d, d^-1} of Z/k * Z/k.
struct FPMeasure {
  double c = 0.25, c_inv = 0.25, d = 0.25, d_inv = 0.25;

  double total() const { return c + c_inv + d + d_inv; }
  static FPMeasure factor_symmetric(double p) { return {p, 0.5 - p, p, 0.5 - p}; }
};

// Reduced word in Z/k * Z/k: alternating syllables (factor, exponent),
// factor 0 = c-side, factor 1 = d-side, exponent in 1..k-1.
struct FPWord {
  int k = 3;
  std::vector<std::pair<int, int>> syllables;

  // Multiply on the right by c^+1 (gen 0), c^-1 (1), d^+1 (2), d^-1 (3).
  void step(int gen);
  int length() const { return static_cast<int>(syllables.size()); }
};

// Ever-reach probabilities Q(s^j) of the single-syllable elements, the
// minimal nonnegative solution of the first-passage system.
struct FPPassage {
  int k = 3;
  std::array<std::vector<double>, 2> q;  // q[side][j-1], j = 1..k-1

  double side_sum(int side) const {
    double s = 0;
    for (double v : q[side]) s += v;
    return s;
  }
};

// Harmonic-measure syllable weights: r[side][j-1] is the probability that
// the first syllable of the boundary word is side^j; r_agg(j) sums the two
// sides.
struct FPWeights {
  int k = 3;
  std::array<std::vector<double>, 2> r;

  double r_agg(int j) const { return r[0][j - 1] + r[1][j - 1]; }
  double side_total(int side) const {
    double s = 0;
    for (double v : r[side]) s += v;
    return s;
  }
};

FPPassage solve_fp_passage(int k, const FPMeasure& mu, double tol = 1e-14,
                           long long max_iter = 1'000'000);
FPWeights harmonic_weights(const FPPassage& passage);

// Drift of the syllable length |W_n| of the walk.
double fp_drift(int k, const FPMeasure& mu);

// Monte Carlo drift of |W_n|/n, the oracle for fp_drift at general k.
EstimatorReport estimate_fp_drift(int k, const FPMeasure& mu, int n, int trials,
                                  uint64_t seed);

}  // namespace braidwalk::fp

namespace braidwalk {

// Projection of a normal form to the free-product quotient: syllable
// letter-lengths become alternating c/d exponents.  The side of the first
// syllable is anchored by its first letter (a -> c-side), which makes the
// map commute with the a/b swap.
fp::FPWord schreier_project(const GarsideNormalForm& x);

}  // namespace braidwalk
