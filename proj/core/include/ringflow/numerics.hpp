#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringflow {

/// Options for bracketed scalar root finding.
struct RootOpts {
  double x_tol = 1e-14;
  int max_iter = 200;
};

/// Bracketing bisection with a secant-accelerated midpoint (Brent-style
/// safeguard: the accelerated point is used only while it stays inside the
/// bracket). f(lo) and f(hi) must have opposite sign, or one of them be zero.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 RootOpts opts = {});

/// Golden-section maximization of a unimodal-enough function on [lo, hi].
/// Returns argmax; tolerance on x.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double x_tol = 1e-13);

/// Least squares fit of samples (x_i, y_i) against basis powers x^p for the
/// given exponents, solved by normal equations on scaled columns.
std::vector<double> fit_powers(const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& exponents);

/// Shortest representation of a double that round-trips through parsing.
std::string format_double(double v);

/// Truncated real Fourier series a_0 + sum_k (a_k cos k t + b_k sin k t).
/// cos_c[k] holds a_k (cos_c[0] is the constant term), sin_c[k] holds b_k
/// with sin_c[0] unused and kept at zero.
struct FourierSeries {
  std::vector<double> cos_c;
  std::vector<double> sin_c;

  FourierSeries() = default;
  explicit FourierSeries(int n_modes) : cos_c(n_modes, 0.0), sin_c(n_modes, 0.0) {}

  int modes() const { return static_cast<int>(cos_c.size()); }
  bool zero() const;

  double eval(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;

  /// Coefficients of the series rotated by phase: g(t) = f(t - phase).
  FourierSeries rotated(double phase) const;
};

/// Interpolate periodic samples y_j at t_j = 2*pi*j/n by the trigonometric
/// polynomial through them and return its coefficients.
FourierSeries fourier_fit(const std::vector<double>& samples, int n_modes_keep);

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

}  // namespace ringflow
