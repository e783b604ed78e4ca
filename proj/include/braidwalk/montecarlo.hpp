#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "braidwalk/drift.hpp"
#include "braidwalk/group.hpp"
#include "braidwalk/passage_green.hpp"
#include "braidwalk/stats.hpp"

namespace braidwalk::mc {

// One realization of the walk, with the per-step observables needed by
// the drift and CLT estimators.
struct Trajectory {
  GroupContext ctx;
  uint64_t seed = 0;
  std::vector<Gen> steps;
  GarsideNormalForm state;               // final position
  std::vector<int> syllable_counts;      // |X-hat_n|_T after each step
  std::vector<long long> delta_exps;     // k_n after each step
  std::vector<int> letter_counts;        // positive letters of X-hat_n
};

// Draws a generator from nu using the top 53 bits of the engine, so the
// sequence is identical across platforms.
Gen draw_step(const StepDistribution& nu, std::mt19937_64& rng);

Trajectory run_walk(const StepDistribution& nu, GroupContext ctx, int n,
                    uint64_t seed);

// Monte Carlo drifts.  Walks run in the full group so the Garside exponent
// is not reduced; the geodesic drift (B3 only) is the full-group length.
drift::DriftReport estimate_drifts(const StepDistribution& nu, GroupContext ctx,
                                   int n, int trials, uint64_t seed);

struct QHatReport {
  std::array<EstimatorReport, 8> q;  // q-hat(u), Sigma order
  EstimatorReport q_hat_1;           // return to 1 before Delta
  EstimatorReport q_hat_delta;       // reach Delta before returning to 1
  int horizon_used = 0;
};

// Frequency estimates of the first-passage probabilities on B3/Z.  The
// horizon doubles until estimates move by less than a tenth of their
// standard error, up to 16x the initial value.
QHatReport estimate_qhat(const StepDistribution& nu, int trials, int horizon,
                         uint64_t seed);

// Fraction of walks that ever reach each target (at some step n >= 1).
std::vector<EstimatorReport> estimate_ever_reach(
    const StepDistribution& nu, const std::vector<GarsideNormalForm>& targets,
    int trials, int horizon, uint64_t seed);

// Mean number of visits to the identity over [0, horizon].
EstimatorReport estimate_visits_to_identity(const StepDistribution& nu,
                                            int trials, int horizon,
                                            uint64_t seed);

struct CltReport {
  EstimatorReport sigma_sigma;  // sample std of (|X-hat_n|_T - n g_S)/sqrt(n)
  EstimatorReport sigma_delta;  // sample std of (k_n - n g_D)/sqrt(n)
  double ks_p_sigma = 0.0;
  double ks_p_delta = 0.0;
};

CltReport clt_check(const StepDistribution& nu, int n, int trials,
                    uint64_t seed, double gamma_sigma, double gamma_delta);

// Asymptotic Kolmogorov-Smirnov p-value of a sample against N(0,1) after
// standardizing by its own mean and standard deviation.
double ks_normal_pvalue(std::vector<double> sample);

struct Convolution {
  // dist[n] maps normal-form key -> probability of X_n (n = 0..n_max)
  std::vector<std::unordered_map<std::string, double>> dist;
  std::vector<double> entropy;  // H(mu^{*n}), natural log
  double entropy_rate(int n) const { return entropy[n] / n; }
};

// Exact distribution of the walk by dynamic programming; n_max <= 12.
Convolution exact_convolution(const StepDistribution& nu, GroupContext ctx,
                              int n_max);

// Equality oracle for two generator words, in B3 or B3 mod center.
bool burau_oracle(const std::string& w1, const std::string& w2,
                  bool mod_center);

}  // namespace braidwalk::mc
