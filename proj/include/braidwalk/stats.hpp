#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace braidwalk {

// Derives a per-trial seed from a base seed, so results do not depend on
// how trials are partitioned across workers.
inline uint64_t derive_seed(uint64_t base, uint64_t trial) {
  uint64_t z = base + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Welford running mean/variance; merge() is associative enough for
// order-independent aggregation across workers.
struct Accumulator {
  long long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) { *this = o; return; }
    const double d = o.mean - mean;
    const long long t = n + o.n;
    mean += d * static_cast<double>(o.n) / static_cast<double>(t);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                     static_cast<double>(t);
    n = t;
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }
  double standard_error() const {
    return n > 0 ? stddev() / std::sqrt(static_cast<double>(n)) : 0.0;
  }
};

struct EstimatorReport {
  double estimate = 0.0;
  double standard_error = 0.0;
  long long n = 0;        // per-trial horizon, when applicable
  long long trials = 0;
  uint64_t seed = 0;

  bool within(double target, double sigmas = 3.0) const {
    return std::abs(estimate - target) <= sigmas * standard_error;
  }
};

}  // namespace braidwalk
