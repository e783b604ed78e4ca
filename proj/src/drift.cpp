#include "braidwalk/drift.hpp"

#include <cmath>
#include <vector>

#include "braidwalk/errors.hpp"
#include "braidwalk/free_product.hpp"

namespace braidwalk::drift {

namespace {

constexpr double kUniformEps = 1e-12;

double disc_root(double p) { return std::sqrt(16 * p * p - 8 * p + 5); }

double eval_poly(const std::array<double, 4>& c, double x) {
  return ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
}

double eval_poly_deriv(const std::array<double, 4>& c, double x) {
  return (3 * c[3] * x + 2 * c[2]) * x + c[1];
}

// All simple roots of the cubic in (0,1), by grid bracketing, bisection
// and one Newton polish each.
std::vector<double> roots_in_unit_interval(const std::array<double, 4>& c) {
  std::vector<double> roots;
  const int grid = 4000;
  double x0 = 0.0, f0 = eval_poly(c, 0.0);
  for (int i = 1; i <= grid; ++i) {
    const double x1 = static_cast<double>(i) / grid;
    const double f1 = eval_poly(c, x1);
    if (f0 == 0.0 && x0 > 0.0) roots.push_back(x0);
    if (f0 * f1 < 0.0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval_poly(c, mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if (flo * fm < 0.0) hi = mid;
        else { lo = mid; flo = fm; }
        if (hi - lo < 1e-16) break;
      }
      double r = 0.5 * (lo + hi);
      const double d = eval_poly_deriv(c, r);
      if (d != 0.0) r -= eval_poly(c, r) / d;
      if (r > 0.0 && r < 1.0) roots.push_back(r);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace

std::array<double, 4> inverse_symmetric_cubic(double p) {
  return {p * (2 * p - 1), p * (7 - 12 * p), 24 * p * p - 18 * p + 1,
          2 * (4 * p - 1)};
}

double inverse_symmetric_root(double p) {
  if (std::abs(p - 0.25) < kUniformEps) return 0.25;  // double root of -2(X-1/4)^2
  auto roots = roots_in_unit_interval(inverse_symmetric_cubic(p));
  if (roots.empty())
    throw RootSelectionError("inverse_symmetric_root: no root in (0,1)");
  double best = roots[0];
  for (double r : roots) best = std::min(best, r);
  return best;
}

double positive_symmetric_Ra(double p) {
  if (std::abs(p - 0.25) < kUniformEps) return 0.25;  // removable singularity
  return (3 - 4 * p - disc_root(p)) / (4 * (1 - 4 * p));
}

double positive_symmetric_branch_max(double p) {
  const double s = disc_root(p);
  const double b1 = 1 - 4 * p;
  const double b2 = (1 - 2 * p) * (-1 - 4 * p + s) / (2 * (1 - 4 * p));
  const double b3 = p * (-3 + 4 * p + s) / (-1 + 4 * p);
  const double b4 = -1 + 4 * p;
  return std::max(std::max(b1, b2), std::max(b3, b4));
}

DriftReport drift_inverse_symmetric(double p) {
  if (!(p > 0.0 && p < 0.5))
    throw DomainError("drift_inverse_symmetric: p must lie in (0, 1/2)");
  // All four drifts are symmetric under p -> 1/2 - p.
  const double pr = (p > 0.25) ? 0.5 - p : p;
  const double u = inverse_symmetric_root(pr);
  const double g = pr + (1 - 4 * pr) * u;
  DriftReport rep;
  rep.family = "inverse-symmetric";
  rep.p = p;
  rep.gamma = DriftValue{g, Method::ClosedForm};
  rep.gamma_sigma = DriftValue{g, Method::ClosedForm};
  rep.gamma_delta = DriftValue{-g / 2, Method::ClosedForm};
  rep.gamma_splus = DriftValue{1.5 * g, Method::ClosedForm};
  return rep;
}

DriftReport drift_positive_symmetric(double p) {
  if (!(p > 0.0 && p < 0.5))
    throw DomainError("drift_positive_symmetric: p must lie in (0, 1/2)");
  const double s = disc_root(p);
  const double ra = positive_symmetric_Ra(p);
  DriftReport rep;
  rep.family = "positive-symmetric";
  rep.p = p;
  rep.gamma_sigma = DriftValue{(-1 + s) / 4, Method::ClosedForm};
  rep.gamma_delta = DriftValue{2 * p - 0.5 - 2 * p * ra, Method::ClosedForm};
  rep.gamma_splus = DriftValue{0.5 - 2 * p + 6 * p * ra, Method::ClosedForm};
  // Piecewise geodesic drift; for p below 1/4 use the reflection.
  const double pr = (p < 0.25) ? 0.5 - p : p;
  const double ra_r = positive_symmetric_Ra(pr);
  const double gd_r = 2 * pr - 0.5 - 2 * pr * ra_r;
  const double g = (gd_r >= 0.0) ? 4 * pr - 1 : 4 * pr * ra_r;
  rep.gamma = DriftValue{g, Method::ClosedForm};
  return rep;
}

DriftReport drift_simple_Ak(int k) {
  if (k < 3) throw DomainError("drift_simple_Ak: k must be >= 3");
  const double gs = fp::fp_drift(k, fp::FPMeasure{});
  DriftReport rep;
  rep.family = "simple-Ak";
  rep.p = 0.25;
  rep.k = k;
  rep.gamma_sigma = DriftValue{gs, Method::Solver};
  rep.gamma_delta = DriftValue{-gs / 2, Method::Solver};
  if (k == 3) {
    rep.gamma_splus = DriftValue{1.5 * gs, Method::Solver};
    rep.gamma = DriftValue{gs, Method::Solver};
  }
  // For k != 3 the geodesic and positive-letter drifts have no analytic
  // route here; they are estimated by simulation where needed.
  return rep;
}

}  // namespace braidwalk::drift
