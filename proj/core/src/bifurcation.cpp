#include "ringflow/bifurcation.hpp"

#include <cmath>
#include <stdexcept>

#include "ringflow/model_family.hpp"
#include "ringflow/numerics.hpp"

namespace ringflow::spectrum {

namespace {

constexpr double kLamLo = 1e-9;
constexpr double kLamHi = 1.0 - 1e-9;

double clamp_lambda(double lambda) { return std::clamp(lambda, kLamLo, kLamHi); }

double R2_of(double lambda) {
  return (1.0 - lambda * lambda) / (-2.0 * std::log(lambda));
}

/// coth(omega) with e^omega = lambda^{-k}, in the overflow-free power form
/// coth(omega) = (1 + lambda^{2k}) / (1 - lambda^{2k}).
double coth_omega(double lambda, double k) {
  double p = std::pow(lambda, 2.0 * k);
  return (1.0 + p) / (1.0 - p);
}

double inv_sinh_omega(double lambda, double k) {
  double p = std::pow(lambda, k);
  return 2.0 * p / (1.0 - p * p);
}

struct TD {
  double T, D;
};

TD trace_det(double lambda, double k) {
  double r2 = R2_of(lambda);
  double l2 = lambda * lambda;
  double co = (k > 0.0) ? coth_omega(lambda, k) : 0.0;
  double kcoth = (k > 0.0) ? k * co : -1.0 / std::log(lambda);  // k coth(omega) -> -1/log(lambda)
  TD td;
  td.T = r2 * (1.0 / l2 - 1.0) * kcoth + 2.0 - r2 - r2 / l2;
  td.D = (r2 / l2 - 1.0) * (1.0 - r2) * (k * k - 1.0);
  return td;
}

/// Eigenvalues of Mtilde - 2 Id; the smaller one computed cancellation-free
/// when T is large and positive.
std::array<double, 2> eigen_from_td(const TD& td) {
  double disc = td.T * td.T - 4.0 * td.D;
  double sq = std::sqrt(disc);
  double m2 = (td.T + sq) / 2.0 - 2.0;
  double m1;
  if (td.T > 0.0)
    m1 = 2.0 * td.D / (td.T + sq) - 2.0;
  else
    m1 = (td.T - sq) / 2.0 - 2.0;
  return {m1, m2};
}

}  // namespace

SpectralPoint spectral_point(double lambda, double k) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("spectral_point: lambda must lie in (0,1)");
  if (!(k >= 0.0)) throw std::domain_error("spectral_point: k must be >= 0");
  lambda = clamp_lambda(lambda);
  SpectralPoint sp;
  sp.lambda = lambda;
  sp.k = k;
  double r2 = R2_of(lambda);
  sp.R = std::sqrt(r2);
  sp.c_i = (r2 - lambda * lambda) / lambda;
  sp.c_o = 1.0 - r2;
  TD td = trace_det(lambda, k);
  sp.T = td.T;
  sp.D = td.D;
  auto mu = eigen_from_td(td);
  sp.mu1 = mu[0];
  sp.mu2 = mu[1];
  double sl = std::sqrt(lambda);
  double l2 = lambda * lambda;
  if (k > 0.0) {
    double co = coth_omega(lambda, k);
    double si = inv_sinh_omega(lambda, k);
    sp.m_entries = {{{(r2 - l2) / l2 * (k * co - 1.0) - 2.0, -k / sl * (1.0 - r2) * si},
                     {-k / sl * (r2 - l2) / lambda * si, (1.0 - r2) * (k * co + 1.0) - 2.0}}};
  } else {
    double il = 1.0 / std::log(lambda);
    sp.m_entries = {{{(r2 - l2) / l2 * (-il - 1.0) - 2.0, (1.0 - r2) * il / sl},
                     {(r2 - l2) / lambda * il / sl, (1.0 - r2) * (-il + 1.0) - 2.0}}};
  }
  return sp;
}

double mu1(double lambda, double k) {
  return eigen_from_td(trace_det(clamp_lambda(lambda), k))[0];
}

double mu2(double lambda, double k) {
  return eigen_from_td(trace_det(clamp_lambda(lambda), k))[1];
}

double discriminant_decomposition(double lambda, double k) {
  lambda = clamp_lambda(lambda);
  double r2 = R2_of(lambda);
  double ci = (r2 - lambda * lambda) / lambda;
  double co = 1.0 - r2;
  double cil = ci / lambda;
  double kcoth = (k > 0.0) ? k * coth_omega(lambda, k) : -1.0 / std::log(lambda);
  double ksinh = (k > 0.0) ? k * inv_sinh_omega(lambda, k) : -1.0 / std::log(lambda);
  double bracket = kcoth * (cil - co) - (cil + co);
  return bracket * bracket + 4.0 * (ci * co / lambda) * ksinh * ksinh;
}

double dmu1_dlambda(double lambda, double k) {
  lambda = clamp_lambda(lambda);
  if (!(k > 1.0)) throw std::domain_error("dmu1_dlambda: requires k > 1");
  double r2 = R2_of(lambda);
  double l2 = lambda * lambda;
  double l3 = l2 * lambda;
  double co = coth_omega(lambda, k);
  double si = inv_sinh_omega(lambda, k);
  double one_m = 1.0 - l2;
  double Tp = r2 / (l3 * one_m) *
              (one_m * one_m * k * k * si * si +
               2.0 * (r2 - l2 - 1.0) * one_m * k * co +
               2.0 * (1.0 - r2 - r2 * l2 + l2 * l2));
  double Dp = -2.0 * r2 * (k * k - 1.0) / (l3 * one_m) *
              ((r2 - l2) * (r2 - l2) + (1.0 - r2) * (1.0 - r2));
  TD td = trace_det(lambda, k);
  double sq = std::sqrt(td.T * td.T - 4.0 * td.D);
  return 0.5 * (Tp - (td.T * Tp - 2.0 * Dp) / sq);
}

BifurcationPoint find_bifurcation_point(int k) {
  if (k < 2) throw std::domain_error("find_bifurcation_point: requires k >= 2");
  // scan for sign changes: the crossing must be unique
  const int n_scan = 1000;
  int changes = 0;
  double lo = 0.0, hi = 0.0;
  double prev_l = 1e-4, prev_v = mu1(prev_l, k);
  for (int j = 1; j <= n_scan; ++j) {
    double l = 1e-4 + (1.0 - 2e-4 - 1e-4) * double(j) / n_scan;
    double v = mu1(l, k);
    if (std::signbit(v) != std::signbit(prev_v)) {
      ++changes;
      lo = prev_l;
      hi = l;
    }
    prev_l = l;
    prev_v = v;
  }
  if (changes != 1)
    throw std::runtime_error("find_bifurcation_point: expected exactly one sign "
                             "change of mu1, found " + std::to_string(changes));
  double lk = find_root([k](double l) { return mu1(l, k); }, lo, hi,
                        {.x_tol = 1e-16, .max_iter = 200});
  // Newton polish with the analytic derivative
  for (int i = 0; i < 4; ++i) {
    double v = mu1(lk, k);
    double d = dmu1_dlambda(lk, k);
    if (d == 0.0) break;
    lk -= v / d;
  }
  BifurcationPoint bp;
  bp.k = k;
  bp.lambda_k = lk;
  bp.dmu1_dlambda = dmu1_dlambda(lk, k);
  return bp;
}

MonotoneReport verify_monotone_in_k(double lambda, const std::vector<double>& k_grid) {
  MonotoneReport rep;
  rep.mu1_increasing = true;
  rep.mu2_increasing = true;
  rep.worst_step = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j + 1 < k_grid.size(); ++j) {
    double d1 = mu1(lambda, k_grid[j + 1]) - mu1(lambda, k_grid[j]);
    double d2 = mu2(lambda, k_grid[j + 1]) - mu2(lambda, k_grid[j]);
    if (d1 <= 0.0) rep.mu1_increasing = false;
    if (d2 <= 0.0) rep.mu2_increasing = false;
    rep.worst_step = std::min({rep.worst_step, d1, d2});
  }
  // local surrogate for the derivative positivity of the symmetrized matrix
  const double h = 1e-4;
  for (double k : k_grid) {
    if (mu1(lambda, k + h) <= mu1(lambda, k)) rep.mu1_increasing = false;
    if (mu2(lambda, k + h) <= mu2(lambda, k)) rep.mu2_increasing = false;
  }
  return rep;
}

std::array<double, 2> asymptotic_slopes(double lambda) {
  lambda = clamp_lambda(lambda);
  double r2 = R2_of(lambda);
  double l2 = lambda * lambda;
  return {r2 * (1.0 - l2) / l2,
          l2 * (r2 - l2) * (1.0 - r2) / (r2 * r2 * (1.0 - l2) * (1.0 - l2))};
}

ZeroConditionReport verify_zero_condition(const BifurcationPoint& bp) {
  double l = bp.lambda_k;
  double k = bp.k;
  double r2 = R2_of(l);
  double l2 = l * l;
  double kcoth = k * coth_omega(l, k);
  ZeroConditionReport rep;
  rep.residual = 2.0 * r2 * (1.0 - l2) * kcoth -
                 ((r2 - l2) * (1.0 - r2) * k * k + (r2 + l2) * (1.0 + r2));
  rep.margin = 2.0 * r2 * (1.0 - l2) * kcoth + l2 - 3.0 * r2 * r2 - 3.0 * r2 * l2 -
               3.0 * r2;
  rep.kcoth_margin = kcoth - (1.0 + r2) / (1.0 - r2);
  rep.pass = std::abs(rep.residual) < 1e-8 && rep.margin > 0.0;
  return rep;
}

}  // namespace ringflow::spectrum
