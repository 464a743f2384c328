#include "ringflow/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include <Eigen/Dense>

namespace ringflow {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 RootOpts opts) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw std::invalid_argument("find_root: endpoints do not bracket a sign change");
  for (int it = 0; it < opts.max_iter && hi - lo > opts.x_tol; ++it) {
    double mid = 0.5 * (lo + hi);
    // secant proposal, kept only if it falls well inside the bracket
    double denom = fhi - flo;
    if (denom != 0.0) {
      double sec = (lo * fhi - hi * flo) / denom;
      double margin = 0.1 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin && (it & 1)) mid = sec;
    }
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double x_tol) {
  const double inv_phi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> fit_powers(const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& exponents) {
  const int m = static_cast<int>(x.size());
  const int n = static_cast<int>(exponents.size());
  if (m < n) throw std::invalid_argument("fit_powers: underdetermined fit");
  // scale columns by x_max^p to keep the QR well conditioned
  double xmax = *std::max_element(x.begin(), x.end());
  Eigen::MatrixXd A(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      A(i, j) = std::pow(x[i] / xmax, exponents[j]);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b(i) = y[i];
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = c(j) / std::pow(xmax, exponents[j]);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool FourierSeries::zero() const {
  for (double c : cos_c)
    if (c != 0.0) return false;
  for (double s : sin_c)
    if (s != 0.0) return false;
  return true;
}

double FourierSeries::eval(double t) const {
  double acc = 0.0;
  for (int k = 0; k < modes(); ++k) {
    acc += cos_c[k] * std::cos(k * t);
    if (k > 0) acc += sin_c[k] * std::sin(k * t);
  }
  return acc;
}

double FourierSeries::deriv(double t) const {
  double acc = 0.0;
  for (int k = 1; k < modes(); ++k)
    acc += -k * cos_c[k] * std::sin(k * t) + k * sin_c[k] * std::cos(k * t);
  return acc;
}

double FourierSeries::deriv2(double t) const {
  double acc = 0.0;
  for (int k = 1; k < modes(); ++k)
    acc += -double(k) * k * (cos_c[k] * std::cos(k * t) + sin_c[k] * std::sin(k * t));
  return acc;
}

FourierSeries FourierSeries::rotated(double phase) const {
  FourierSeries g(modes());
  for (int k = 0; k < modes(); ++k) {
    double c = std::cos(k * phase), s = std::sin(k * phase);
    // f(t - phase): cos k(t-phase) = cos kt cos kphase + sin kt sin kphase
    g.cos_c[k] = cos_c[k] * c - sin_c[k] * s;
    g.sin_c[k] = (k > 0) ? sin_c[k] * c + cos_c[k] * s : 0.0;
  }
  return g;
}

FourierSeries fourier_fit(const std::vector<double>& samples, int n_modes_keep) {
  const int n = static_cast<int>(samples.size());
  const int kmax = std::min(n_modes_keep - 1, n / 2);
  FourierSeries f(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    double ac = 0.0, as = 0.0;
    for (int j = 0; j < n; ++j) {
      double t = 2.0 * kPi * j / n;
      ac += samples[j] * std::cos(k * t);
      as += samples[j] * std::sin(k * t);
    }
    double norm = (k == 0 || 2 * k == n) ? 1.0 / n : 2.0 / n;
    f.cos_c[k] = ac * norm;
    if (k > 0) f.sin_c[k] = as * norm;
  }
  return f;
}

}  // namespace ringflow
