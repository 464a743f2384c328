#include "ringflow/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "ringflow/numerics.hpp"

namespace ringflow {

RadialGrid::RadialGrid(int n_nodes) : n(n_nodes) {
  if (n < 4) throw std::invalid_argument("RadialGrid: need at least 4 nodes");
  s.resize(n);
  bary_w.resize(n);
  for (int j = 0; j < n; ++j) {
    s[j] = 0.5 * (1.0 - std::cos(kPi * j / (n - 1)));
    bary_w[j] = (j % 2 == 0 ? 1.0 : -1.0);
  }
  bary_w[0] *= 0.5;
  bary_w[n - 1] *= 0.5;

  // differentiation matrix from the barycentric weights (negative sum trick
  // on the diagonal)
  d1.resize(n, n);
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      d1(i, j) = (bary_w[j] / bary_w[i]) / (s[i] - s[j]);
      row += d1(i, j);
    }
    d1(i, i) = -row;
  }
  d2 = d1 * d1;

  // Clenshaw-Curtis weights on [-1,1], mapped to [0,1] (factor 1/2), with the
  // node order flipped to match increasing s
  quad_w.assign(n, 0.0);
  const int m = n - 1;
  for (int j = 0; j <= m; ++j) {
    double w = 1.0;
    for (int k = 1; k <= m / 2; ++k) {
      double b = (2 * k == m) ? 1.0 : 2.0;
      w -= b * std::cos(2.0 * k * kPi * j / m) / (4.0 * k * k - 1.0);
    }
    w *= 2.0 / m;
    if (j == 0 || j == m) w *= 0.5;
    quad_w[m - j] = 0.5 * w;
  }
}

double RadialGrid::interp(const Eigen::Ref<const Eigen::VectorXd>& v, double x) const {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < n; ++j) {
    double dx = x - s[j];
    if (dx == 0.0) return v(j);
    double t = bary_w[j] / dx;
    num += t * v(j);
    den += t;
  }
  return num / den;
}

double RadialGrid::interp_deriv(const Eigen::Ref<const Eigen::VectorXd>& v, double x) const {
  // derivative of the barycentric interpolant; at a node, use the
  // differentiation matrix row
  for (int j = 0; j < n; ++j) {
    if (x == s[j]) return d1.row(j).dot(v);
  }
  double num = 0.0, den = 0.0, dnum = 0.0, dden = 0.0;
  for (int j = 0; j < n; ++j) {
    double dx = x - s[j];
    double t = bary_w[j] / dx;
    double tp = -bary_w[j] / (dx * dx);
    num += t * v(j);
    den += t;
    dnum += tp * v(j);
    dden += tp;
  }
  return (dnum * den - num * dden) / (den * den);
}

FourierGrid::FourierGrid(int n_nodes) : n(n_nodes) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("FourierGrid: need an even number of nodes >= 4");
  theta.resize(n);
  for (int j = 0; j < n; ++j) theta[j] = 2.0 * kPi * j / n;

  d1.setZero(n, n);
  d2.setZero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        d2(i, i) = -n * n / 12.0 - 1.0 / 6.0;
        continue;
      }
      double h = 0.5 * (theta[i] - theta[j]);
      double sgn = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      d1(i, j) = 0.5 * sgn / std::tan(h);
      double si = std::sin(h);
      d2(i, j) = -sgn * 0.5 / (si * si);
    }
  }
}

double FourierGrid::integrate(const Eigen::Ref<const Eigen::VectorXd>& samples) const {
  return samples.sum() * (2.0 * kPi / n);
}

double periodic_max(const Eigen::Ref<const Eigen::VectorXd>& samples) {
  const int n = static_cast<int>(samples.size());
  std::vector<double> v(samples.data(), samples.data() + n);
  FourierSeries f = fourier_fit(v, n / 2 + 1);
  int best = 0;
  for (int j = 1; j < n; ++j)
    if (v[j] > v[best]) best = j;
  double t0 = 2.0 * kPi * best / n, h = 2.0 * kPi / n;
  double t = golden_max([&](double x) { return f.eval(x); }, t0 - h, t0 + h, 1e-13);
  return std::max(f.eval(t), v[best]);
}

}  // namespace ringflow
