#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "braidwalk/group.hpp"

namespace braidwalk {

// Step distribution nu on the walk generators S = {a, a^-1, b, b^-1}.
struct StepDistribution {
  double a = 0.25, a_inv = 0.25, b = 0.25, b_inv = 0.25;

  double weight(Gen g) const {
    switch (g) {
      case Gen::A: return a;
      case Gen::AInv: return a_inv;
      case Gen::B: return b;
      case Gen::BInv: return b_inv;
    }
    return 0.0;
  }
  double total() const { return a + a_inv + b + b_inv; }
  static StepDistribution uniform() { return {}; }
  static StepDistribution inverse_symmetric(double p) {
    return {p, p, 0.5 - p, 0.5 - p};
  }
  static StepDistribution positive_symmetric(double p) {
    return {p, 0.5 - p, p, 0.5 - p};
  }
};

}  // namespace braidwalk

namespace braidwalk::green {

// Index algebra of the eight-letter alphabet Sigma of B3/Z, in the fixed
// order a, b, ab, ba, aD, bD, abD, baD.  All the index expressions of the
// first-passage system are precomputed here from the group arithmetic.
struct SigmaTables {
  std::vector<SigmaLetter> sigma;
  std::vector<GarsideNormalForm> nf;
  std::array<int, 8> inv;          // index of u^-1
  std::array<int, 8> delta_flip;   // index of u Delta
  std::array<int, 8> iota_delta;   // index of iota(u) Delta
  std::array<Letter, 8> first;     // First(u)
  // chained_quot[v][u] = index of v^-1 u when First(v) = First(u) and
  // v is neither u nor u Delta; -1 otherwise.
  std::array<std::array<int, 8>, 8> chained_quot;

  static const SigmaTables& instance();
};

// Pushforward mu of nu on Sigma: mu(a)=nu(a), mu(b)=nu(b),
// mu(baD)=nu(a^-1), mu(abD)=nu(b^-1).
std::array<double, 8> pushforward(const StepDistribution& nu);

// Right-hand side of the first-passage fixed-point system evaluated at y.
std::array<double, 8> eval_traffic_rhs(const std::array<double, 8>& y,
                                       const std::array<double, 8>& mu);

// Fixed-point iteration of eval_traffic_rhs from an arbitrary start;
// exposed to demonstrate that the system has several solutions.
std::array<double, 8> fixed_point(const std::array<double, 8>& mu,
                                  std::array<double, 8> y0, double tol = 1e-14,
                                  long long max_iter = 1'000'000);

// Newton solve of y = rhs(y).  Unlike plain iteration this also reaches
// the repelling solutions of the system (e.g. from the all-ones start).
std::array<double, 8> newton_solve(const std::array<double, 8>& mu,
                                   std::array<double, 8> y0,
                                   double tol = 1e-13, int max_iter = 200);

struct QVector {
  std::array<double, 8> q{};
  double q_hat_1 = 0.0;
  double q_hat_delta = 0.0;
  std::array<double, 8> mu{};
};

// Minimal nonnegative solution of the first-passage system, plus the
// derived return scalars.
QVector solve_q(const StepDistribution& nu);

struct GreenEntry {
  GarsideNormalForm target;
  double Q = 0.0;      // probability of ever reaching the target
  double Gamma = 0.0;  // expected number of visits
};

struct GreenReport {
  double Q_delta = 0.0;
  double Gamma_1 = 0.0;
  double Q_bar_1 = 0.0;  // ever-return probability to the identity
  std::vector<GreenEntry> table;
};

// Probability of ever reaching v, by summation over the Delta-insertion
// preimages of its syllable word; at most 20 syllables.
double ever_reach(const QVector& qv, const GarsideNormalForm& v);

GreenReport green_function(const QVector& qv,
                           const std::vector<GarsideNormalForm>& targets);

}  // namespace braidwalk::green
