#include "ringflow/pseudo_radial.hpp"

#include <cmath>
#include <stdexcept>

#include "ringflow/numerics.hpp"

namespace ringflow {

PseudoRadial::PseudoRadial(double R, Branch branch) : R_(R), branch_(branch) {
  if (!(R >= 0.0 && R < 1.0))
    throw std::domain_error("PseudoRadial: R must lie in [0,1)");
  if (R == 0.0 && branch == Branch::Minus)
    throw std::domain_error("PseudoRadial: the disk solution has no inner branch");
  u_max_ = model::u_max(R);
  r_i_ = (R > 0.0) ? model::inner_radius(R) : 0.0;
  if (branch == Branch::Plus) {
    range_lo_ = R;
    range_hi_ = 1.0;
  } else {
    range_lo_ = r_i_;
    range_hi_ = R;
  }
}

void PseudoRadial::check_u(double u, bool allow_max) const {
  if (!(u >= 0.0 && u <= u_max_ + 1e-15))
    throw std::domain_error("PseudoRadial: u outside [0, u_max]");
  if (!allow_max && u >= u_max_)
    throw std::domain_error("PseudoRadial: derivative is singular at u = u_max");
}

double PseudoRadial::psi(double u) const {
  check_u(u, true);
  if (u >= u_max_) return R_;
  if (R_ == 0.0) return std::sqrt(1.0 - 2.0 * u);
  const double R2 = R_ * R_;
  auto F = [&](double p) { return 1.0 - p * p + 2.0 * R2 * std::log(p) - 2.0 * u; };
  // bisection to 1e-6, then Newton polish kept inside the bracket; plain
  // Newton is unsafe near psi = R where dF/dpsi vanishes
  double lo = range_lo_, hi = range_hi_;
  double flo = F(lo);
  if (flo == 0.0) return lo;
  if (F(hi) == 0.0) return hi;
  if (branch_ == Branch::Minus && flo > 0.0) {
    // the lower end is itself a computed root of F(., u=0): the true root at
    // small u can sit a few ulps below it; nudge until the sign flips
    for (double shrink = 1e-12; flo > 0.0 && shrink < 1e-3; shrink *= 10) {
      lo = range_lo_ * (1.0 - shrink);
      flo = F(lo);
    }
    if (flo > 0.0) throw std::runtime_error("psi: failed to bracket the inner root");
  }
  while (hi - lo > 1e-6) {
    double mid = 0.5 * (lo + hi);
    double fm = F(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  // Newton polish kept inside the closed bracket (the root may coincide with
  // a bracket endpoint, so steps onto the endpoints are legitimate)
  double p = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    double f = F(p);
    if (f == 0.0 || std::abs(f) < 1e-16) break;
    if (std::signbit(f) == std::signbit(flo))
      lo = std::max(lo, p);
    else
      hi = std::min(hi, p);
    double fp = 2.0 * (R2 - p * p) / p;
    double q = (fp != 0.0) ? p - f / fp : 0.5 * (lo + hi);
    if (!(q >= lo && q <= hi)) q = 0.5 * (lo + hi);
    if (q == p) break;
    p = q;
  }
  if (std::abs(F(lo)) < std::abs(F(p))) p = lo;
  if (std::abs(F(hi)) < std::abs(F(p))) p = hi;
  return p;
}

double PseudoRadial::psi_dot(double u) const {
  check_u(u, false);
  double p = psi(u);
  if (R_ == 0.0) return -1.0 / p;
  return -p / (p * p - R_ * R_);
}

double PseudoRadial::psi_ddot(double u) const {
  check_u(u, false);
  double p = psi(u);
  double pd = (R_ == 0.0) ? -1.0 / p : -p / (p * p - R_ * R_);
  return 2.0 * pd * pd * pd + pd * pd / p;
}

double PseudoRadial::w_model(double u) const {
  check_u(u, true);
  if (u >= u_max_) return 0.0;
  double p = psi(u);
  double z = (p * p - R_ * R_) / p;
  return z * z;
}

ExpansionFit PseudoRadial::expansion_check(double delta, int n_samples) const {
  if (!(delta > 0.0 && delta < u_max_))
    throw std::domain_error("expansion_check: delta outside (0, u_max)");
  if (R_ == 0.0)
    throw std::domain_error("expansion_check: requires R > 0");
  std::vector<double> e(n_samples), w(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    e[i] = delta * (i + 1) / n_samples;
    w[i] = w_model(u_max_ - e[i]);
  }
  auto c = fit_powers(e, w, {1.0, 1.5, 2.0, 2.5});
  if (!std::isfinite(c[0]) || !std::isfinite(c[1]))
    throw std::runtime_error("expansion_check: fit failed (delta too large?)");
  // reject windows outside the asymptotic regime
  double wmax = 0.0, rmax = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    double fit_i = c[0] * e[i] + c[1] * std::pow(e[i], 1.5) + c[2] * e[i] * e[i] +
                   c[3] * std::pow(e[i], 2.5);
    wmax = std::max(wmax, std::abs(w[i]));
    rmax = std::max(rmax, std::abs(w[i] - fit_i));
  }
  if (rmax > 0.05 * wmax)
    throw std::runtime_error("expansion_check: window too wide for the expansion");
  ExpansionFit fit;
  fit.a0 = c[0];
  fit.a1 = c[1];
  fit.dev_a0 = std::abs(c[0] - 4.0);
  double target = (branch_ == Branch::Plus ? -1.0 : 1.0) * 8.0 / (3.0 * R_);
  fit.dev_a1 = std::abs(c[1] - target);
  return fit;
}

}  // namespace ringflow
