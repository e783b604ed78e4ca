#include "braidwalk/passage_green.hpp"

#include <cmath>

#include "braidwalk/errors.hpp"

namespace braidwalk::green {

namespace {

int index_of(const std::vector<GarsideNormalForm>& nfs,
             const GarsideNormalForm& x) {
  for (size_t i = 0; i < nfs.size(); ++i)
    if (nfs[i] == x) return static_cast<int>(i);
  return -1;
}

SigmaTables build_tables() {
  const auto ctx = GroupContext::b3_mod_z();
  SigmaTables t;
  t.sigma = sigma_alphabet(ctx);
  if (t.sigma.size() != 8)
    throw StructureError("SigmaTables: alphabet size is not 8");
  for (const auto& s : t.sigma) {
    GarsideNormalForm x(ctx);
    multiply_right(x, s);
    t.nf.push_back(x);
  }
  for (int u = 0; u < 8; ++u) {
    t.first[u] = t.sigma[u].syl.first;
    const int fu = index_of(t.nf, inverse(t.nf[u]));
    auto ud = t.nf[u];
    ud.append_delta(1);
    const int fd = index_of(t.nf, ud);
    auto iud = iota(t.nf[u]);
    iud.append_delta(1);
    const int fid = index_of(t.nf, iud);
    if (fu < 0 || fd < 0 || fid < 0)
      throw StructureError("SigmaTables: index expression left Sigma");
    t.inv[u] = fu;
    t.delta_flip[u] = fd;
    t.iota_delta[u] = fid;
  }
  for (int v = 0; v < 8; ++v)
    for (int u = 0; u < 8; ++u) {
      t.chained_quot[v][u] = -1;
      if (t.first[v] != t.first[u]) continue;
      if (v == u || v == t.delta_flip[u]) continue;
      const auto quot = multiply(inverse(t.nf[v]), t.nf[u]);
      const int idx = index_of(t.nf, quot);
      if (idx < 0)
        throw StructureError("SigmaTables: chained quotient left Sigma");
      t.chained_quot[v][u] = idx;
    }
  return t;
}

}  // namespace

const SigmaTables& SigmaTables::instance() {
  static const SigmaTables t = build_tables();
  return t;
}

std::array<double, 8> pushforward(const StepDistribution& nu) {
  // Order: a, b, ab, ba, aD, bD, abD, baD.
  return {nu.a, nu.b, 0.0, 0.0, 0.0, 0.0, nu.b_inv, nu.a_inv};
}

std::array<double, 8> eval_traffic_rhs(const std::array<double, 8>& y,
                                       const std::array<double, 8>& mu) {
  const auto& t = SigmaTables::instance();
  std::array<double, 8> out{};
  for (int u = 0; u < 8; ++u) {
    double v = mu[u];
    for (int w = 0; w < 8; ++w) {
      if (mu[w] == 0.0) continue;
      if (t.first[w] == t.first[u]) {
        if (t.chained_quot[w][u] >= 0)
          v += mu[w] * y[t.chained_quot[w][u]];
      } else {
        v += mu[w] * (y[t.inv[w]] * y[u] +
                      y[t.delta_flip[t.inv[w]]] * y[t.iota_delta[u]]);
      }
    }
    out[u] = v;
  }
  return out;
}

std::array<double, 8> fixed_point(const std::array<double, 8>& mu,
                                  std::array<double, 8> y0, double tol,
                                  long long max_iter) {
  for (long long it = 0; it < max_iter; ++it) {
    const auto next = eval_traffic_rhs(y0, mu);
    double gap = 0.0;
    for (int u = 0; u < 8; ++u) gap = std::max(gap, std::abs(next[u] - y0[u]));
    y0 = next;
    if (gap < tol) return y0;
  }
  throw NonConvergence("fixed_point: iteration cap reached");
}

std::array<double, 8> newton_solve(const std::array<double, 8>& mu,
                                   std::array<double, 8> y0, double tol,
                                   int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const auto r = eval_traffic_rhs(y0, mu);
    std::array<double, 8> f;  // residual y - rhs(y)
    double res = 0.0;
    for (int i = 0; i < 8; ++i) {
      f[i] = y0[i] - r[i];
      res = std::max(res, std::abs(f[i]));
    }
    if (res < tol) return y0;
    // Numerical Jacobian of the residual.
    double jac[8][8];
    const double h = 1e-7;
    for (int j = 0; j < 8; ++j) {
      auto yp = y0;
      yp[j] += h;
      const auto rp = eval_traffic_rhs(yp, mu);
      for (int i = 0; i < 8; ++i)
        jac[i][j] = ((i == j ? 1.0 : 0.0)) - (rp[i] - r[i]) / h;
    }
    // Solve jac * dy = f by Gaussian elimination with partial pivoting.
    std::array<double, 8> dy = f;
    for (int c = 0; c < 8; ++c) {
      int piv = c;
      for (int rr = c + 1; rr < 8; ++rr)
        if (std::abs(jac[rr][c]) > std::abs(jac[piv][c])) piv = rr;
      if (std::abs(jac[piv][c]) < 1e-14)
        throw NonConvergence("newton_solve: singular Jacobian");
      if (piv != c) {
        for (int cc = 0; cc < 8; ++cc) std::swap(jac[c][cc], jac[piv][cc]);
        std::swap(dy[c], dy[piv]);
      }
      for (int rr = c + 1; rr < 8; ++rr) {
        const double m = jac[rr][c] / jac[c][c];
        for (int cc = c; cc < 8; ++cc) jac[rr][cc] -= m * jac[c][cc];
        dy[rr] -= m * dy[c];
      }
    }
    for (int c = 7; c >= 0; --c) {
      for (int cc = c + 1; cc < 8; ++cc) dy[c] -= jac[c][cc] * dy[cc];
      dy[c] /= jac[c][c];
    }
    for (int i = 0; i < 8; ++i) y0[i] -= dy[i];
  }
  throw NonConvergence("newton_solve: iteration cap reached");
}

QVector solve_q(const StepDistribution& nu) {
  QVector qv;
  qv.mu = pushforward(nu);
  qv.q = fixed_point(qv.mu, std::array<double, 8>{});
  const auto& t = SigmaTables::instance();
  for (int u = 0; u < 8; ++u) {
    if (qv.mu[u] == 0.0) continue;
    qv.q_hat_1 += qv.mu[u] * qv.q[t.inv[u]];
    qv.q_hat_delta += qv.mu[u] * qv.q[t.delta_flip[t.inv[u]]];
  }
  if (qv.q_hat_1 + qv.q_hat_delta >= 1.0 - 1e-12)
    throw TransienceViolation("solve_q: return mass too close to 1");
  return qv;
}

double ever_reach(const QVector& qv, const GarsideNormalForm& v) {
  const auto& t = SigmaTables::instance();
  const double q_delta = qv.q_hat_delta / (1.0 - qv.q_hat_1);
  const long long parity = ((v.delta_exp() % 2) + 2) % 2;
  const auto syl = v.syllables();
  const size_t m = syl.size();
  if (m == 0) {
    if (parity == 0)  // ever-return probability to the identity
      return qv.q_hat_1 + qv.q_hat_delta * q_delta;
    return q_delta;
  }
  if (m > 20) throw DepthExceeded("ever_reach: more than 20 syllables");

  // Letter index of a syllable, optionally a/b-swapped, optionally with
  // Delta: order a, b, ab, ba and +4 for the Delta versions.
  auto letter_idx = [&](Syllable s, int twists, int delta) {
    const Letter f = (twists % 2) ? other(s.first) : s.first;
    const int base = (s.length == 1) ? (f ? 1 : 0) : (f ? 3 : 2);
    return base + 4 * delta;
  };

  double total = 0.0;
  const size_t free_bits = m - 1;
  for (size_t mask = 0; mask < (size_t{1} << free_bits); ++mask) {
    double prod = 1.0;
    int twist = 0;
    for (size_t i = 0; i + 1 < m; ++i) {
      const int eps = (mask >> i) & 1;
      prod *= qv.q[letter_idx(syl[i], twist, eps)];
      twist += eps;
    }
    // Last syllable: its Delta-tag is forced by the total parity.
    const int eps_last =
        static_cast<int>(((parity - (twist % 2)) % 2 + 2) % 2);
    const int last = letter_idx(syl[m - 1], twist, eps_last);
    total += prod * (qv.q[last] + qv.q[t.delta_flip[last]] * q_delta);
  }
  return total;
}

GreenReport green_function(const QVector& qv,
                           const std::vector<GarsideNormalForm>& targets) {
  GreenReport rep;
  const double one_minus = 1.0 - qv.q_hat_1;
  rep.Q_delta = qv.q_hat_delta / one_minus;
  rep.Gamma_1 =
      one_minus / (one_minus * one_minus - qv.q_hat_delta * qv.q_hat_delta);
  rep.Q_bar_1 = qv.q_hat_1 + qv.q_hat_delta * rep.Q_delta;
  for (const auto& v : targets) {
    GreenEntry e{v, 0.0, 0.0};
    if (v.is_identity()) {
      e.Q = rep.Q_bar_1;
      e.Gamma = rep.Gamma_1;
    } else {
      e.Q = ever_reach(qv, v);
      e.Gamma = rep.Gamma_1 * e.Q;
    }
    rep.table.push_back(std::move(e));
  }
  return rep;
}

}  // namespace braidwalk::green
