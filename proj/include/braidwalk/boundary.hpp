#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "braidwalk/passage_green.hpp"
#include "braidwalk/stats.hpp"

namespace braidwalk::boundary {

// Syllable alphabet T = {a, b, ab, ba} indexed as in Sigma.  A syllable v
// may follow u iff First(v) = Last(u); the two continuations of any u
// always carry total R-mass 1/2.
int t_index(Syllable s);
Syllable t_syllable(int t);
std::array<int, 2> t_successors(int t);

// Positive 2x2 matrix automaton computing harmonic-measure cylinders
//   mu-inf(u_1...u_l T^N) = e_1 M(u_1)...M(u_{l-1}) beta(u_l).
// The two states track the Delta-parity of the underlying Sigma-lift, so
// M(u) = [[q(u), q(uD)], [q(iota(u)D), q(iota(u))]] with q the
// first-passage vector, beta(u) = [R(u), R(iota(u))]^T, and the law of the
// first syllable is R(u) = (q(u) + q(uD))/2.
struct RTAutomaton {
  std::array<double, 8> q{};   // Sigma order
  std::array<double, 4> R{};   // T order; sums to 1
  bool approximate_R = false;  // R estimated by simulation
  double R_se = 0.0;
  double delta = 0.0;          // contraction constant, in (0,1)
  double K_const = 0.0;        // oscillation constant

  std::array<double, 4> mat(int t) const;  // row-major 2x2
  std::array<double, 2> beta(int t) const { return {R[t], R[t ^ 1]}; }
  bool iota_invariant_R(double tol = 1e-12) const;
};

RTAutomaton build_automaton(const green::QVector& qv,
                            const std::array<double, 4>& R);

// R from the q-vector; exact for any irreducible nu.
std::array<double, 4> exact_R_from_q(const green::QVector& qv);
// Closed forms for the two symmetric families.
std::array<double, 4> exact_R_positive_symmetric(double p);
std::array<double, 4> exact_R_inverse_symmetric(double p);
// Independent oracle: first-syllable frequency of X-hat_n.
std::array<double, 4> estimate_R(const StepDistribution& nu, int n, int trials,
                                 uint64_t seed, double* se_out = nullptr);

RTAutomaton build_automaton_mc(const StepDistribution& nu, int n, int trials,
                               uint64_t seed);

// A point of the boundary: a chained syllable word, extendable on demand by
// the mu-inf sampler when an automaton is attached.  The sampler keeps the
// running row vector e_1 M(u_1...u_{l-1}) so cylinder ratios condition on
// the whole prefix (mu-inf is not first-order Markov in general).
struct BoundaryWord {
  std::vector<Syllable> syllables;
  bool extendable = false;
  uint64_t seed = 0;
  std::array<std::array<double, 4>, 4> mats{};
  std::array<std::array<double, 2>, 4> betas{};
  std::array<double, 2> row{1.0, 0.0};  // e_1 M(u_1..u_{l-1}), normalized

  // Grows the word to at least m syllables (law mu-inf, deterministic in
  // the seed and independent of the call pattern).
  void ensure(size_t m);
};

BoundaryWord make_boundary_word(std::vector<Syllable> prefix);
BoundaryWord make_boundary_word(std::vector<Syllable> prefix,
                                const RTAutomaton& aut, uint64_t seed);
BoundaryWord sample_boundary(const RTAutomaton& aut, int length, uint64_t seed);

// mu-inf measure of the cylinder u_1...u_l T^N.
double cylinder_measure(const RTAutomaton& aut, std::span<const Syllable> word);

// u^-1 (*) xi_1...xi_n = v . xi_l ... xi_n, possibly iota-twisted: the
// group product's Delta-free word with its stable tail aligned to xi.
struct ActionTriple {
  std::vector<Syllable> v;
  int l = 1;          // 1-based index of the first kept xi syllable
  bool twisted = false;

  friend bool operator==(const ActionTriple&, const ActionTriple&) = default;
};

ActionTriple boundary_action(const GarsideNormalForm& u, BoundaryWord& xi,
                             int n);
// Doubles the depth until the triple stops moving; throws NotStabilized at
// the cap.
ActionTriple stable_action(const GarsideNormalForm& u, BoundaryWord& xi,
                           int max_n = 1 << 12);

struct CertifiedValue {
  double value = 0.0;
  double half_width = 0.0;
  int n_used = 0;
};

// Radon-Nikodym derivative d(u (*) mu-inf)/d(mu-inf) at xi, with a rigorous
// half-width from the contraction bound K (1-delta^2)^(n-l-1).  Truncation
// depth is capped at 10^4.
CertifiedValue rn_derivative(const RTAutomaton& aut, const GarsideNormalForm& u,
                             BoundaryWord& xi, double target_eps);

// Minimal positive harmonic function K_xi(g), as the derivative above.
CertifiedValue harmonic_function(const RTAutomaton& aut,
                                 const GarsideNormalForm& g, BoundaryWord& xi,
                                 double target_eps);
// Independent route: K_xi(g) = lim Q(g^-1 (*) xi_1..xi_n) / Q(xi_1..xi_n),
// evaluated at finite depth n through the Green pipeline.
double harmonic_function_green(const green::QVector& qv,
                               const GarsideNormalForm& g, BoundaryWord& xi,
                               int n);

struct EntropyReport {
  double value = 0.0;
  double stat_se = 0.0;     // Monte Carlo standard error
  double bias_bound = 0.0;  // propagated certificate half-widths
  int n_samples = 0;
  uint64_t seed = 0;
};

// Avez entropy h = -sum_u mu(u) E log rn(u^-1, xi) under xi ~ mu-inf.
EntropyReport entropy(const RTAutomaton& aut, const StepDistribution& nu,
                      int n_samples, double eps_rn, uint64_t seed);

// The 4-state automaton (alpha, M, beta): tensor of the 2x2 automaton with
// the chain recognizer.  Kept as a test fixture for the iota-symmetry
// M(u)_{ij} = M(iota(u))_{5-i,5-j}; states (k, letter) in the order
// (1,a), (1,b), (2,a), (2,b).
struct FourStateAutomaton {
  const RTAutomaton* aut;
  std::array<double, 4> alpha() const { return {1, 0, 1, 0}; }
  std::array<double, 4> iota_alpha() const { return {0, 1, 0, 1}; }
  std::array<std::array<double, 4>, 4> mat(int t) const;
  std::array<double, 4> beta(int t) const;
};

}  // namespace braidwalk::boundary
