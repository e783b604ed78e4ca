#include "braidwalk/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "braidwalk/drift.hpp"
#include "braidwalk/errors.hpp"
#include "braidwalk/montecarlo.hpp"

namespace braidwalk::boundary {

namespace {

using Row = std::array<double, 2>;

Row mul(const Row& v, const std::array<double, 4>& m) {
  return {v[0] * m[0] + v[1] * m[2], v[0] * m[1] + v[1] * m[3]};
}

double dot(const Row& v, const Row& w) { return v[0] * w[0] + v[1] * w[1]; }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_chained(std::span<const Syllable> word) {
  for (size_t i = 1; i < word.size(); ++i)
    if (word[i].first != word[i - 1].last())
      throw ChainError("boundary word: syllable does not chain");
}

}  // namespace

int t_index(Syllable s) {
  if (s.length < 1 || s.length > 2)
    throw ChainError("t_index: syllable length out of range");
  return (s.length == 1 ? 0 : 2) + (s.first ? 1 : 0);
}

Syllable t_syllable(int t) {
  return {static_cast<Letter>(t & 1), t < 2 ? 1 : 2};
}

std::array<int, 2> t_successors(int t) {
  const int last = t_syllable(t).last();
  return {last, 2 + last};
}

std::array<double, 4> RTAutomaton::mat(int t) const {
  const int it = t ^ 1;  // iota on T indices
  return {q[t], q[t + 4], q[it + 4], q[it]};
}

bool RTAutomaton::iota_invariant_R(double tol) const {
  return std::abs(R[0] - R[1]) < tol && std::abs(R[2] - R[3]) < tol;
}

RTAutomaton build_automaton(const green::QVector& qv,
                            const std::array<double, 4>& R) {
  RTAutomaton aut;
  aut.q = qv.q;
  aut.R = R;
  for (double v : aut.q)
    if (!(v > 0.0)) throw PositivityError("build_automaton: q entry not positive");
  double rsum = 0.0;
  for (double v : R) {
    if (!(v > 0.0)) throw PositivityError("build_automaton: R entry not positive");
    rsum += v;
  }
  if (std::abs(rsum - 1.0) > 1e-6)
    throw DomainError("build_automaton: R does not sum to 1");
  aut.delta = 1.0;
  aut.K_const = 0.0;
  for (int t = 0; t < 4; ++t) {
    const auto m = aut.mat(t);
    const double lo = *std::min_element(m.begin(), m.end());
    const double hi = *std::max_element(m.begin(), m.end());
    aut.delta = std::min(aut.delta, lo / hi);
    // K: oscillation of the row ratios, over ordered row pairs (i, j).
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double r0 = m[2 * i] / m[2 * j];
        const double r1 = m[2 * i + 1] / m[2 * j + 1];
        aut.K_const = std::max(aut.K_const, std::abs(r0 - r1));
      }
  }
  return aut;
}

std::array<double, 4> exact_R_from_q(const green::QVector& qv) {
  std::array<double, 4> R;
  for (int t = 0; t < 4; ++t) R[t] = 0.5 * (qv.q[t] + qv.q[t + 4]);
  return R;
}

std::array<double, 4> exact_R_positive_symmetric(double p) {
  const double ra = drift::positive_symmetric_Ra(p);
  return {ra, ra, 0.5 - ra, 0.5 - ra};
}

std::array<double, 4> exact_R_inverse_symmetric(double p) {
  if (p <= 0.0 || p >= 0.5)
    throw DomainError("exact_R_inverse_symmetric: p outside (0, 1/2)");
  // R(a) is the cubic root for p <= 1/4; for larger p relabel a <-> b.
  const double ra =
      p <= 0.25 ? drift::inverse_symmetric_root(p)
                : 0.5 - drift::inverse_symmetric_root(0.5 - p);
  return {ra, 0.5 - ra, 0.5 - ra, ra};  // R(ba) = R(a), R(ab) = R(b)
}

std::array<double, 4> estimate_R(const StepDistribution& nu, int n, int trials,
                                 uint64_t seed, double* se_out) {
  std::array<Accumulator, 4> acc;
  for (int t = 0; t < trials; ++t) {
    auto tr = mc::run_walk(nu, GroupContext::b3_mod_z(), n,
                           derive_seed(seed, t));
    if (tr.state.letter_count() == 0) continue;  // no first syllable yet
    const int idx = t_index(tr.state.syllables().front());
    for (int i = 0; i < 4; ++i) acc[i].add(i == idx ? 1.0 : 0.0);
  }
  std::array<double, 4> R{};
  double se = 0.0;
  for (int i = 0; i < 4; ++i) {
    R[i] = acc[i].mean;
    se = std::max(se, acc[i].standard_error());
  }
  if (se_out) *se_out = se;
  return R;
}

RTAutomaton build_automaton_mc(const StepDistribution& nu, int n, int trials,
                               uint64_t seed) {
  double se = 0.0;
  const auto R = estimate_R(nu, n, trials, seed, &se);
  auto aut = build_automaton(green::solve_q(nu), R);
  aut.approximate_R = true;
  aut.R_se = se;
  return aut;
}

void BoundaryWord::ensure(size_t m) {
  if (syllables.size() >= m) return;
  if (!extendable)
    throw DepthExceeded("boundary word: prefix too short and not extendable");
  while (syllables.size() < m) {
    const size_t i = syllables.size();
    std::mt19937_64 rng(derive_seed(seed, i));
    const double u = uniform01(rng);
    if (i == 0) {
      double c = 0.0;
      int pick = 3;
      for (int t = 0; t < 4; ++t) {
        c += betas[t][0];  // R(t)
        if (u < c) { pick = t; break; }
      }
      syllables.push_back(t_syllable(pick));
      row = {1.0, 0.0};
    } else {
      const int last = t_index(syllables.back());
      const auto next_row = mul(row, mats[last]);
      const auto succ = t_successors(last);
      const double den = dot(row, {betas[last][0], betas[last][1]});
      const double p0 =
          dot(next_row, {betas[succ[0]][0], betas[succ[0]][1]}) / den;
      const int pick = u < p0 ? succ[0] : succ[1];
      syllables.push_back(t_syllable(pick));
      row = next_row;
      const double scale = row[0] + row[1];
      row = {row[0] / scale, row[1] / scale};
    }
  }
}

BoundaryWord make_boundary_word(std::vector<Syllable> prefix) {
  check_chained(prefix);
  BoundaryWord w;
  w.syllables = std::move(prefix);
  return w;
}

BoundaryWord make_boundary_word(std::vector<Syllable> prefix,
                                const RTAutomaton& aut, uint64_t seed) {
  check_chained(prefix);
  BoundaryWord w;
  w.extendable = true;
  w.seed = seed;
  for (int t = 0; t < 4; ++t) {
    w.mats[t] = aut.mat(t);
    w.betas[t] = aut.beta(t);
  }
  // Fold the given prefix into the running row vector.
  for (size_t i = 0; i + 1 < prefix.size(); ++i)
    w.row = mul(w.row, w.mats[t_index(prefix[i])]);
  if (prefix.size() > 1) {
    const double scale = w.row[0] + w.row[1];
    w.row = {w.row[0] / scale, w.row[1] / scale};
  }
  w.syllables = std::move(prefix);
  return w;
}

BoundaryWord sample_boundary(const RTAutomaton& aut, int length,
                             uint64_t seed) {
  auto w = make_boundary_word({}, aut, seed);
  w.ensure(static_cast<size_t>(length));
  return w;
}

double cylinder_measure(const RTAutomaton& aut,
                        std::span<const Syllable> word) {
  if (word.empty()) return 1.0;
  check_chained(word);
  Row v{1.0, 0.0};
  for (size_t i = 0; i + 1 < word.size(); ++i)
    v = mul(v, aut.mat(t_index(word[i])));
  const auto b = aut.beta(t_index(word.back()));
  return v[0] * b[0] + v[1] * b[1];
}

ActionTriple boundary_action(const GarsideNormalForm& u, BoundaryWord& xi,
                             int n) {
  if (u.context() != GroupContext::b3_mod_z())
    throw DomainError("boundary_action: element must live in B3 mod center");
  xi.ensure(static_cast<size_t>(n));
  GarsideNormalForm z = inverse(u);
  for (int i = 0; i < n; ++i) z.append_syllable(xi.syllables[i]);
  ActionTriple tr;
  tr.twisted = (z.delta_exp() & 1) != 0;
  const auto w = z.syllables();
  size_t matched = 0;
  while (matched < w.size() && matched < static_cast<size_t>(n)) {
    Syllable expect = xi.syllables[n - 1 - matched];
    if (tr.twisted) expect = iota(expect);
    if (w[w.size() - 1 - matched] != expect) break;
    ++matched;
  }
  tr.l = n - static_cast<int>(matched) + 1;
  tr.v.assign(w.begin(), w.end() - matched);
  return tr;
}

ActionTriple stable_action(const GarsideNormalForm& u, BoundaryWord& xi,
                           int max_n) {
  int n = 8;
  ActionTriple prev = boundary_action(u, xi, n);
  for (n *= 2; n <= max_n; n *= 2) {
    ActionTriple cur = boundary_action(u, xi, n);
    if (cur == prev) return cur;
    prev = cur;
  }
  throw NotStabilized("boundary_action: no stable triple up to the depth cap");
}

CertifiedValue rn_derivative(const RTAutomaton& aut, const GarsideNormalForm& u,
                             BoundaryWord& xi, double target_eps) {
  if (u.is_identity()) return {1.0, 0.0, 0};
  const auto tr = stable_action(u, xi);
  // Numerator cylinder of the twisted case: the second automaton state IS
  // the iota-twist, so v.iota(tail) is v's product followed by a state
  // swap: a_1 = e_1 M(v) J, and beta then matches the denominator's.
  Row a1{1.0, 0.0};
  for (Syllable s : tr.v) a1 = mul(a1, aut.mat(t_index(s)));
  if (tr.twisted) a1 = {a1[1], a1[0]};
  Row a2{1.0, 0.0};
  for (int i = 0; i + 1 < tr.l; ++i)
    a2 = mul(a2, aut.mat(t_index(xi.syllables[i])));

  const double cross = a1[0] * a2[1] - a1[1] * a2[0];
  if (std::abs(cross) <= 1e-14 * (a1[0] + a1[1]) * (a2[0] + a2[1]))
    return {(a1[0] + a1[1]) / (a2[0] + a2[1]), 0.0, tr.l};

  const double shrink = 1.0 - aut.delta * aut.delta;
  std::array<double, 4> P{1.0, 0.0, 0.0, 1.0};
  const int cap = tr.l + 10000;
  for (int n = tr.l; n <= cap; ++n) {
    xi.ensure(static_cast<size_t>(n));
    const auto m = aut.mat(t_index(xi.syllables[n - 1]));
    P = {P[0] * m[0] + P[1] * m[2], P[0] * m[1] + P[1] * m[3],
         P[2] * m[0] + P[3] * m[2], P[2] * m[1] + P[3] * m[3]};
    const double scale = std::max({P[0], P[1], P[2], P[3]});
    for (double& x : P) x /= scale;
    if (n - tr.l < 1) continue;  // need at least two factors for the bound
    const double c = P[2] / P[0];
    const double eps = aut.K_const * std::pow(shrink, n - tr.l - 1);
    const double c_lo = std::max(0.0, c - eps), c_hi = c + eps;
    const double r_lo = (a1[0] + a1[1] * c_lo) / (a2[0] + a2[1] * c_lo);
    const double r_hi = (a1[0] + a1[1] * c_hi) / (a2[0] + a2[1] * c_hi);
    const double lo = std::min(r_lo, r_hi), hi = std::max(r_lo, r_hi);
    if (0.5 * (hi - lo) <= target_eps)
      return {0.5 * (hi + lo), 0.5 * (hi - lo), n};
  }
  throw DepthExceeded("rn_derivative: depth cap before reaching target_eps");
}

CertifiedValue harmonic_function(const RTAutomaton& aut,
                                 const GarsideNormalForm& g, BoundaryWord& xi,
                                 double target_eps) {
  return rn_derivative(aut, g, xi, target_eps);
}

double harmonic_function_green(const green::QVector& qv,
                               const GarsideNormalForm& g, BoundaryWord& xi,
                               int n) {
  xi.ensure(static_cast<size_t>(n));
  const auto ctx = GroupContext::b3_mod_z();
  GarsideNormalForm z = inverse(g);
  GarsideNormalForm xin(ctx);
  for (int i = 0; i < n; ++i) {
    z.append_syllable(xi.syllables[i]);
    xin.append_syllable(xi.syllables[i]);
  }
  return green::ever_reach(qv, z) / green::ever_reach(qv, xin);
}

EntropyReport entropy(const RTAutomaton& aut, const StepDistribution& nu,
                      int n_samples, double eps_rn, uint64_t seed) {
  const auto mu = green::pushforward(nu);
  const auto& tables = green::SigmaTables::instance();
  std::vector<std::pair<double, GarsideNormalForm>> terms;
  for (int u = 0; u < 8; ++u)
    if (mu[u] > 0.0) terms.emplace_back(mu[u], tables.nf[tables.inv[u]]);
  Accumulator acc;
  double bias = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    auto xi = sample_boundary(aut, 64, derive_seed(seed, j));
    double s = 0.0, b = 0.0;
    for (const auto& [w, uinv] : terms) {
      const auto cv = rn_derivative(aut, uinv, xi, eps_rn);
      s -= w * std::log(cv.value);
      b += w * cv.half_width / std::max(cv.value - cv.half_width, 1e-300);
    }
    acc.add(s);
    bias = std::max(bias, b);
  }
  EntropyReport rep;
  rep.value = acc.mean;
  rep.stat_se = acc.standard_error();
  rep.bias_bound = bias;
  rep.n_samples = n_samples;
  rep.seed = seed;
  return rep;
}

std::array<std::array<double, 4>, 4> FourStateAutomaton::mat(int t) const {
  const auto m = aut->mat(t);
  const Syllable s = t_syllable(t);
  const int f = s.first, la = s.last();
  std::array<std::array<double, 4>, 4> out{};
  for (int k = 0; k < 2; ++k)
    for (int kk = 0; kk < 2; ++kk)
      out[2 * k + f][2 * kk + la] = m[2 * k + kk];
  return out;
}

std::array<double, 4> FourStateAutomaton::beta(int t) const {
  const int f = t_syllable(t).first;
  const auto b = aut->beta(t);
  std::array<double, 4> out{};
  out[f] = b[0];
  out[2 + f] = b[1];
  return out;
}

}  // namespace braidwalk::boundary
