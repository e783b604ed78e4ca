#include "braidwalk/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "braidwalk/burau.hpp"
#include "braidwalk/errors.hpp"

namespace braidwalk::mc {

namespace {

GroupContext full_group(GroupContext ctx) {
  if (!ctx.quotient()) return ctx;
  return ctx.family == Family::B3modZ ? GroupContext::b3()
                                      : GroupContext::ak(ctx.k);
}

double phi_normal(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

Gen draw_step(const StepDistribution& nu, std::mt19937_64& rng) {
  const double u =
      static_cast<double>(rng() >> 11) * 0x1.0p-53 * nu.total();
  if (u < nu.a) return Gen::A;
  if (u < nu.a + nu.a_inv) return Gen::AInv;
  if (u < nu.a + nu.a_inv + nu.b) return Gen::B;
  return Gen::BInv;
}

Trajectory run_walk(const StepDistribution& nu, GroupContext ctx, int n,
                    uint64_t seed) {
  Trajectory tr;
  tr.ctx = ctx;
  tr.seed = seed;
  tr.state = GarsideNormalForm(ctx);
  std::mt19937_64 rng(seed);
  tr.steps.reserve(n);
  tr.syllable_counts.reserve(n);
  tr.delta_exps.reserve(n);
  tr.letter_counts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Gen g = draw_step(nu, rng);
    tr.steps.push_back(g);
    tr.state.append_generator(g);
    tr.syllable_counts.push_back(tr.state.syllable_count());
    tr.delta_exps.push_back(tr.state.delta_exp());
    tr.letter_counts.push_back(tr.state.letter_count());
  }
  return tr;
}

drift::DriftReport estimate_drifts(const StepDistribution& nu,
                                   GroupContext ctx, int n, int trials,
                                   uint64_t seed) {
  const GroupContext walk_ctx = full_group(ctx);
  Accumulator syl, del, let, geo;
  const bool with_geodesic = walk_ctx.family == Family::B3;
  for (int t = 0; t < trials; ++t) {
    auto tr = run_walk(nu, walk_ctx, n, derive_seed(seed, t));
    syl.add(static_cast<double>(tr.state.syllable_count()) / n);
    del.add(static_cast<double>(tr.state.delta_exp()) / n);
    let.add(static_cast<double>(tr.state.letter_count()) / n);
    if (with_geodesic)
      geo.add(static_cast<double>(geodesic_length(tr.state)) / n);
  }
  drift::DriftReport rep;
  rep.family = "monte-carlo";
  rep.k = walk_ctx.k;
  using drift::DriftValue;
  using drift::Method;
  rep.gamma_sigma = DriftValue{syl.mean, Method::MonteCarlo, syl.standard_error()};
  rep.gamma_delta = DriftValue{del.mean, Method::MonteCarlo, del.standard_error()};
  rep.gamma_splus = DriftValue{let.mean, Method::MonteCarlo, let.standard_error()};
  if (with_geodesic)
    rep.gamma = DriftValue{geo.mean, Method::MonteCarlo, geo.standard_error()};
  return rep;
}

namespace {

QHatReport run_qhat(const StepDistribution& nu, int trials, int horizon,
                    uint64_t seed) {
  const auto& tables = green::SigmaTables::instance();
  const auto ctx = GroupContext::b3_mod_z();
  std::array<std::string, 8> sigma_keys;
  for (int i = 0; i < 8; ++i) sigma_keys[i] = tables.nf[i].key();
  GarsideNormalForm delta(ctx);
  delta.append_delta(1);
  const std::string id_key = GarsideNormalForm(ctx).key();
  const std::string delta_key = delta.key();

  std::array<Accumulator, 8> acc_q;
  Accumulator acc_1, acc_d;
  const int inf = horizon + 1;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    GarsideNormalForm x(ctx);
    std::array<int, 8> hit;
    hit.fill(inf);
    int hit_1 = inf, hit_d = inf;
    for (int n = 1; n <= horizon; ++n) {
      x.append_generator(draw_step(nu, rng));
      if (x.letter_count() > 2) continue;  // all targets have <= 2 letters
      const std::string k = x.key();
      if (k == id_key) { if (hit_1 == inf) hit_1 = n; continue; }
      if (k == delta_key) { if (hit_d == inf) hit_d = n; continue; }
      for (int i = 0; i < 8; ++i)
        if (hit[i] == inf && k == sigma_keys[i]) { hit[i] = n; break; }
    }
    for (int i = 0; i < 8; ++i)
      acc_q[i].add(hit[i] < hit[tables.delta_flip[i]] ? 1.0 : 0.0);
    acc_1.add(hit_1 < hit_d ? 1.0 : 0.0);
    acc_d.add(hit_d < hit_1 ? 1.0 : 0.0);
  }
  QHatReport rep;
  for (int i = 0; i < 8; ++i)
    rep.q[i] = {acc_q[i].mean, acc_q[i].standard_error(), horizon, trials, seed};
  rep.q_hat_1 = {acc_1.mean, acc_1.standard_error(), horizon, trials, seed};
  rep.q_hat_delta = {acc_d.mean, acc_d.standard_error(), horizon, trials, seed};
  rep.horizon_used = horizon;
  return rep;
}

}  // namespace

QHatReport estimate_qhat(const StepDistribution& nu, int trials, int horizon,
                         uint64_t seed) {
  QHatReport rep = run_qhat(nu, trials, horizon, seed);
  for (int h = 2 * horizon; h <= 16 * horizon; h *= 2) {
    QHatReport next = run_qhat(nu, trials, h, seed);
    bool settled = true;
    for (int i = 0; i < 8; ++i)
      if (std::abs(next.q[i].estimate - rep.q[i].estimate) >
          0.1 * std::max(next.q[i].standard_error, 1e-12))
        settled = false;
    if (std::abs(next.q_hat_1.estimate - rep.q_hat_1.estimate) >
        0.1 * std::max(next.q_hat_1.standard_error, 1e-12))
      settled = false;
    rep = next;
    if (settled) break;
  }
  return rep;
}

std::vector<EstimatorReport> estimate_ever_reach(
    const StepDistribution& nu, const std::vector<GarsideNormalForm>& targets,
    int trials, int horizon, uint64_t seed) {
  std::vector<std::string> keys;
  int max_letters = 0;
  for (const auto& v : targets) {
    keys.push_back(v.key());
    max_letters = std::max(max_letters, v.letter_count());
  }
  std::vector<Accumulator> acc(targets.size());
  const auto ctx = targets.empty() ? GroupContext::b3_mod_z()
                                   : targets.front().context();
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    GarsideNormalForm x(ctx);
    std::vector<char> hit(targets.size(), 0);
    for (int n = 1; n <= horizon; ++n) {
      x.append_generator(draw_step(nu, rng));
      if (x.letter_count() > max_letters) continue;
      const std::string k = x.key();
      for (size_t i = 0; i < keys.size(); ++i)
        if (!hit[i] && k == keys[i]) hit[i] = 1;
    }
    for (size_t i = 0; i < keys.size(); ++i) acc[i].add(hit[i] ? 1.0 : 0.0);
  }
  std::vector<EstimatorReport> out;
  for (auto& a : acc)
    out.push_back({a.mean, a.standard_error(), horizon, trials, seed});
  return out;
}

EstimatorReport estimate_visits_to_identity(const StepDistribution& nu,
                                            int trials, int horizon,
                                            uint64_t seed) {
  const auto ctx = GroupContext::b3_mod_z();
  Accumulator acc;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    GarsideNormalForm x(ctx);
    int visits = 1;  // time 0
    for (int n = 1; n <= horizon; ++n) {
      x.append_generator(draw_step(nu, rng));
      if (x.is_identity()) ++visits;
    }
    acc.add(static_cast<double>(visits));
  }
  return {acc.mean, acc.standard_error(), horizon, trials, seed};
}

double ks_normal_pvalue(std::vector<double> sample) {
  const size_t n = sample.size();
  if (n < 2) return 1.0;
  Accumulator acc;
  for (double x : sample) acc.add(x);
  const double m = acc.mean, s = acc.stddev();
  for (double& x : sample) x = (x - m) / s;
  std::sort(sample.begin(), sample.end());
  double d = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double f = phi_normal(sample[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  const double rn = std::sqrt(static_cast<double>(n));
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  double p = 0.0;
  for (int j = 1; j <= 100; ++j)
    p += 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

CltReport clt_check(const StepDistribution& nu, int n, int trials,
                    uint64_t seed, double gamma_sigma, double gamma_delta) {
  std::vector<double> zs, zd;
  const double rn = std::sqrt(static_cast<double>(n));
  for (int t = 0; t < trials; ++t) {
    auto tr = run_walk(nu, GroupContext::b3(), n, derive_seed(seed, t));
    zs.push_back((tr.state.syllable_count() - n * gamma_sigma) / rn);
    zd.push_back((tr.state.delta_exp() - n * gamma_delta) / rn);
  }
  Accumulator as, ad;
  for (double x : zs) as.add(x);
  for (double x : zd) ad.add(x);
  CltReport rep;
  const double se_factor = 1.0 / std::sqrt(2.0 * (trials - 1));
  rep.sigma_sigma = {as.stddev(), as.stddev() * se_factor, n, trials, seed};
  rep.sigma_delta = {ad.stddev(), ad.stddev() * se_factor, n, trials, seed};
  rep.ks_p_sigma = ks_normal_pvalue(zs);
  rep.ks_p_delta = ks_normal_pvalue(zd);
  return rep;
}

Convolution exact_convolution(const StepDistribution& nu, GroupContext ctx,
                              int n_max) {
  if (n_max > 12) throw BallTooLarge("exact_convolution: n_max > 12");
  Convolution conv;
  std::unordered_map<std::string, GarsideNormalForm> registry;
  const GarsideNormalForm id(ctx);
  registry.emplace(id.key(), id);
  conv.dist.push_back({{id.key(), 1.0}});
  conv.entropy.push_back(0.0);
  const Gen gens[4] = {Gen::A, Gen::AInv, Gen::B, Gen::BInv};
  const double w[4] = {nu.a, nu.a_inv, nu.b, nu.b_inv};
  for (int n = 1; n <= n_max; ++n) {
    std::unordered_map<std::string, double> next;
    for (const auto& [key, p] : conv.dist.back()) {
      const auto& x = registry.at(key);
      for (int g = 0; g < 4; ++g) {
        if (w[g] == 0.0) continue;
        auto y = x;
        y.append_generator(gens[g]);
        const auto k = y.key();
        registry.emplace(k, y);
        next[k] += p * w[g];
      }
    }
    double h = 0.0;
    for (const auto& [key, p] : next)
      if (p > 0.0) h -= p * std::log(p);
    conv.dist.push_back(std::move(next));
    conv.entropy.push_back(h);
  }
  return conv;
}

bool burau_oracle(const std::string& w1, const std::string& w2,
                  bool mod_center) {
  const auto g1 = parse_word(w1), g2 = parse_word(w2);
  const auto m1 = burau(std::span<const Gen>(g1));
  const auto m2 = burau(std::span<const Gen>(g2));
  return mod_center ? burau_equal_mod_center(m1, m2) : m1 == m2;
}

}  // namespace braidwalk::mc
