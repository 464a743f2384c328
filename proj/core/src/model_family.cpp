#include "ringflow/model_family.hpp"

#include <algorithm>
#include <cmath>

#include "ringflow/numerics.hpp"

namespace ringflow::model {

namespace {
// inversion inputs are clamped away from the degenerate endpoints, where
// log R or 1 - R^2 would blow up
constexpr double kRClampLo = 1e-8;
constexpr double kRClampHi = 1.0 - 1e-8;
}  // namespace

double inner_radius(double R) {
  if (!(R > 0.0 && R < 1.0))
    throw std::domain_error("inner_radius: R must lie in (0,1)");
  const double R2 = R * R;
  // root of g(t) = 1 - e^{2t} + 2 R^2 t with t = log(rho);
  // g -> -inf as t -> -inf, g(log R) = 2 u_max(R) > 0
  auto g = [R2](double t) { return 1.0 - std::exp(2.0 * t) + 2.0 * R2 * t; };
  double t_lo = -1.0 / (2.0 * R2) - 1.0;
  double t_hi = std::log(R);
  double t = find_root(g, t_lo, t_hi, {.x_tol = 1e-16, .max_iter = 200});
  // Newton polish in t; g'(t) = -2 e^{2t} + 2 R^2 > 0 on the branch
  for (int i = 0; i < 4; ++i) {
    double e = std::exp(2.0 * t);
    double gp = -2.0 * e + 2.0 * R2;
    if (gp == 0.0) break;
    t -= (1.0 - e + 2.0 * R2 * t) / gp;
  }
  return std::exp(t);
}

double lambda_to_core_radius(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("lambda_to_core_radius: lambda must lie in (0,1)");
  return std::sqrt((1.0 - lambda * lambda) / (-2.0 * std::log(lambda)));
}

double u_max(double R) {
  if (!(R >= 0.0 && R < 1.0))
    throw std::domain_error("u_max: R must lie in [0,1)");
  if (R == 0.0) return 0.5;
  if (R > 0.999) {
    // the two terms cancel to O(d^2) near R = 1; sum the series
    // d^2 - sum_n 2 d^{n+2} / (n (n+1) (n+2)) instead
    double d = 1.0 - R;
    double acc = d * d;
    double p = d * d;
    for (int n = 1; n <= 12; ++n) {
      p *= d;
      acc -= 2.0 * p / (double(n) * (n + 1) * (n + 2));
    }
    return acc;
  }
  return 0.5 * (1.0 - R * R) + R * R * std::log(R);
}

double potential(double R, double r) {
  if (!(R >= 0.0 && R < 1.0))
    throw std::domain_error("potential: R must lie in [0,1)");
  double lo = (R == 0.0) ? 0.0 : inner_radius(R);
  if (!(r >= lo * (1.0 - 1e-12) && r <= 1.0 + 1e-12))
    throw std::domain_error("potential: r outside [r_i(R), 1]");
  if (R == 0.0) return 0.5 * (1.0 - r * r);
  return 0.5 * (1.0 - r * r) + R * R * std::log(r);
}

double gradient_norm(double R, double r) {
  if (!(R >= 0.0 && R < 1.0))
    throw std::domain_error("gradient_norm: R must lie in [0,1)");
  double lo = (R == 0.0) ? 0.0 : inner_radius(R);
  if (!(r >= lo * (1.0 - 1e-12) && r <= 1.0 + 1e-12))
    throw std::domain_error("gradient_norm: r outside [r_i(R), 1]");
  if (r == 0.0) return 0.0;
  return std::abs(r * r - R * R) / r;
}

double tau_outer(double R) {
  if (!(R >= 0.0 && R < 1.0))
    throw std::domain_error("tau_outer: R must lie in [0,1)");
  if (R == 0.0) return 1.0;
  return (1.0 - R * R) / std::sqrt(2.0 * u_max(R));
}

double tau_inner(double R) {
  if (!(R > 0.0 && R <= 1.0))
    throw std::domain_error("tau_inner: R must lie in (0,1]");
  if (R == 1.0) return kSqrt2;
  double ri = inner_radius(R);
  return (R * R - ri * ri) / (ri * std::sqrt(2.0 * u_max(R)));
}

double invert_tau_outer(double tau) {
  if (!(tau >= 1.0 && tau < kSqrt2))
    throw std::out_of_range("invert_tau_outer: tau must lie in [1, sqrt 2)");
  if (tau == 1.0) return 0.0;
  auto f = [tau](double R) { return tau_outer(R) - tau; };
  if (f(kRClampLo) >= 0.0) return 0.0;
  if (f(kRClampHi) <= 0.0) return kRClampHi;
  return find_root(f, kRClampLo, kRClampHi, {.x_tol = 1e-15, .max_iter = 200});
}

double invert_tau_inner(double tau) {
  if (!(tau >= kSqrt2))
    throw std::out_of_range("invert_tau_inner: tau must be >= sqrt 2");
  if (tau == kSqrt2) return 1.0;
  auto f = [tau](double R) { return tau_inner(R) - tau; };
  if (f(kRClampHi) >= 0.0) return 1.0;
  if (f(kRClampLo) <= 0.0) return kRClampLo;
  return find_root(f, kRClampLo, kRClampHi, {.x_tol = 1e-15, .max_iter = 200});
}

double expected_core_radius(double tau) {
  if (tau < 1.0)
    throw std::out_of_range(
        "expected_core_radius: tau < 1 is impossible for any region "
        "(the expected core radius is well defined and nonnegative)");
  return tau < kSqrt2 ? invert_tau_outer(tau) : invert_tau_inner(tau);
}

ModelSolution solution(double R) {
  if (!(R >= 0.0 && R < 1.0))
    throw std::domain_error("solution: R must lie in [0,1)");
  ModelSolution m;
  m.R = R;
  m.u_max = u_max(R);
  m.c_outer = 1.0 - R * R;
  m.tau_o = tau_outer(R);
  if (R > 0.0) {
    m.r_i = inner_radius(R);
    m.c_inner = (R * R - m.r_i * m.r_i) / m.r_i;
    m.tau_i = tau_inner(R);
  }
  return m;
}

BranchKind classify_nwss(double tau, double tol) {
  if (std::abs(tau - kSqrt2) <= tol) return BranchKind::Critical;
  return tau < kSqrt2 ? BranchKind::Outer : BranchKind::Inner;
}

}  // namespace ringflow::model
