#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ringflow {

/// Chebyshev--Lobatto collocation on [0,1]: nodes, differentiation matrices,
/// Clenshaw--Curtis quadrature weights and barycentric interpolation.
struct RadialGrid {
  int n = 0;
  std::vector<double> s;       // nodes, increasing, s[0]=0, s[n-1]=1
  std::vector<double> bary_w;  // barycentric weights
  Eigen::MatrixXd d1, d2;
  std::vector<double> quad_w;  // Clenshaw-Curtis weights on [0,1]

  explicit RadialGrid(int n_nodes);

  /// Value of the interpolant through (s_j, values_j) at point x.
  double interp(const Eigen::Ref<const Eigen::VectorXd>& values, double x) const;

  /// Derivative of the interpolant at point x.
  double interp_deriv(const Eigen::Ref<const Eigen::VectorXd>& values, double x) const;
};

/// Uniform periodic grid on [0, 2*pi) with spectral differentiation matrices
/// (even number of points).
struct FourierGrid {
  int n = 0;
  std::vector<double> theta;
  Eigen::MatrixXd d1, d2;

  explicit FourierGrid(int n_nodes);

  /// Trapezoid quadrature over the period (spectrally accurate for smooth
  /// periodic integrands): h * sum of samples.
  double integrate(const Eigen::Ref<const Eigen::VectorXd>& samples) const;
};

/// Maximum of the trigonometric interpolant through equispaced periodic
/// samples (grid maxima undershoot between nodes by O(h^2)).
double periodic_max(const Eigen::Ref<const Eigen::VectorXd>& samples);

}  // namespace ringflow
