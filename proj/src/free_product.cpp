#include "braidwalk/free_product.hpp"

#include <cmath>

#include "braidwalk/errors.hpp"

namespace braidwalk::fp {

void FPWord::step(int gen) {
  if (gen < 0 || gen > 3) throw DomainError("FPWord::step: bad generator");
  const int factor = gen >> 1;
  const int delta = (gen & 1) ? k - 1 : 1;
  if (!syllables.empty() && syllables.back().first == factor) {
    int e = (syllables.back().second + delta) % k;
    if (e == 0)
      syllables.pop_back();
    else
      syllables.back().second = e;
  } else {
    syllables.emplace_back(factor, delta);
  }
}

FPPassage solve_fp_passage(int k, const FPMeasure& mu, double tol,
                           long long max_iter) {
  if (k < 3) throw DomainError("solve_fp_passage: k must be >= 3");
  FPPassage sol;
  sol.k = k;
  sol.q[0].assign(k - 1, 0.0);
  sol.q[1].assign(k - 1, 0.0);
  const double plus[2] = {mu.c, mu.d};
  const double minus[2] = {mu.c_inv, mu.d_inv};

  auto sweep = [&](const FPPassage& y) {
    FPPassage out = y;
    for (int s = 0; s < 2; ++s) {
      const int t = 1 - s;
      // Probability of stepping to the other side and ever coming back.
      const double detour = plus[t] * y.q[t][k - 2] + minus[t] * y.q[t][0];
      for (int j = 1; j <= k - 1; ++j) {
        double v = 0.0;
        if (j == 1) v += plus[s];
        if (j == k - 1) v += minus[s];
        if (j >= 2) v += plus[s] * y.q[s][j - 2];
        if (j <= k - 2) v += minus[s] * y.q[s][j];
        v += detour * y.q[s][j - 1];
        out.q[s][j - 1] = v;
      }
    }
    return out;
  };

  for (long long it = 0; it < max_iter; ++it) {
    FPPassage next = sweep(sol);
    double gap = 0.0;
    for (int s = 0; s < 2; ++s)
      for (int j = 0; j < k - 1; ++j) {
        // Iteration from zero must be componentwise nondecreasing.
        if (next.q[s][j] < sol.q[s][j] - 1e-15)
          throw Error("solve_fp_passage: monotonicity violated");
        gap = std::max(gap, std::abs(next.q[s][j] - sol.q[s][j]));
      }
    sol = next;
    if (gap < tol) return sol;
  }
  throw NonConvergence("solve_fp_passage: iteration cap reached");
}

FPWeights harmonic_weights(const FPPassage& passage) {
  FPWeights w;
  w.k = passage.k;
  for (int s = 0; s < 2; ++s) {
    const double denom = 1.0 + passage.side_sum(s);
    w.r[s].resize(passage.k - 1);
    for (int j = 0; j < passage.k - 1; ++j)
      w.r[s][j] = passage.q[s][j] / denom;
  }
  return w;
}

double fp_drift(int k, const FPMeasure& mu) {
  const FPWeights w = harmonic_weights(solve_fp_passage(k, mu));
  const double plus[2] = {mu.c, mu.d};
  const double minus[2] = {mu.c_inv, mu.d_inv};
  // Each step grows the word iff the boundary word starts on the other
  // side, and shrinks it iff it starts with the step's inverse syllable.
  double gamma = 0.0;
  for (int s = 0; s < 2; ++s) {
    const int t = 1 - s;
    gamma += plus[s] * (w.side_total(t) - w.r[s][k - 2]);
    gamma += minus[s] * (w.side_total(t) - w.r[s][0]);
  }
  return gamma;
}

EstimatorReport estimate_fp_drift(int k, const FPMeasure& mu, int n, int trials,
                                  uint64_t seed) {
  double cum[4] = {mu.c, 0, 0, 0};
  cum[1] = cum[0] + mu.c_inv;
  cum[2] = cum[1] + mu.d;
  cum[3] = cum[2] + mu.d_inv;
  Accumulator acc;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<uint64_t>(t)));
    FPWord w;
    w.k = k;
    for (int i = 0; i < n; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * cum[3];
      int gen = 0;
      while (gen < 3 && u >= cum[gen]) ++gen;
      w.step(gen);
    }
    acc.add(static_cast<double>(w.length()) / static_cast<double>(n));
  }
  return {acc.mean, acc.standard_error(), n, trials, seed};
}

}  // namespace braidwalk::fp

namespace braidwalk {

fp::FPWord schreier_project(const GarsideNormalForm& x) {
  fp::FPWord w;
  w.k = x.context().k;
  const auto syl = x.syllables();
  if (syl.empty()) return w;
  const int anchor = syl[0].first;  // a-led first syllable -> c-side
  for (size_t i = 0; i < syl.size(); ++i)
    w.syllables.emplace_back(anchor ^ static_cast<int>(i & 1), syl[i].length);
  return w;
}

}  // namespace braidwalk
