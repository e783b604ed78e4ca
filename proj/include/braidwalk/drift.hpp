#pragma once

#include <array>
#include <optional>
#include <string>

namespace braidwalk::drift {

enum class Method { ClosedForm, Solver, MonteCarlo };

struct DriftValue {
  double value = 0.0;
  Method method = Method::ClosedForm;
  double se = 0.0;  // nonzero only for Monte Carlo values
};

// The four drifts of the walk: gamma_sigma = syllable count, gamma_delta =
// Garside exponent, gamma_splus = positive-letter count, gamma = geodesic
// word length, each per step.
struct DriftReport {
  std::string family;
  double p = 0.0;
  int k = 3;
  std::optional<DriftValue> gamma_sigma, gamma_delta, gamma_splus, gamma;
};

// nu(a) = nu(a^-1) = p, nu(b) = nu(b^-1) = 1/2 - p.
DriftReport drift_inverse_symmetric(double p);
// nu(a) = nu(b) = p, nu(a^-1) = nu(b^-1) = 1/2 - p.
DriftReport drift_positive_symmetric(double p);
// Simple (uniform) walk on A_k / center.
DriftReport drift_simple_Ak(int k);

// Coefficients of the cubic whose smallest root in (0,1) drives the
// inverse-symmetric drift: 2(4p-1)X^3 + (24p^2-18p+1)X^2 + p(7-12p)X
// + p(2p-1), listed from the constant term up.
std::array<double, 4> inverse_symmetric_cubic(double p);
double inverse_symmetric_root(double p);

// First-syllable weight R(a) for the positive-symmetric family: the root
// in (0,1) of 4(1-4p)X^2 + 2(4p-3)X + 1.
double positive_symmetric_Ra(double p);

// The four-branch maximum for the geodesic drift of the positive-symmetric
// family; only valid away from p = 1/4 where two branches degenerate.
double positive_symmetric_branch_max(double p);

}  // namespace braidwalk::drift
