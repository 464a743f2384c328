#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ringflow/domain.hpp"
#include "ringflow/grid.hpp"
#include "ringflow/model_family.hpp"

namespace ringflow {

struct SolveOptions {
  double rel_tol = 5e-14;   // iterative solve target, relative residual
  int max_iter = 400;
  bool dense_fallback = true;  // direct solve if the iteration stalls (small grids)
};

enum class Which { Inner, Outer };
enum class NormalConvention { Inward, Outward };  // relative to the domain

/// Per-theta data on one boundary component. Curvature is always stored with
/// respect to the exterior unit normal of the domain; the convention flag
/// applies to the normal derivative only.
struct BoundaryTrace {
  Which which = Which::Outer;
  NormalConvention convention = NormalConvention::Outward;
  std::vector<double> theta;
  Eigen::VectorXd normal_derivative;
  Eigen::VectorXd grad_norm;
  Eigen::VectorXd curvature;
  Eigen::VectorXd arclength_element;
  double length = 0.0;
};

/// Estimate of the maximum set: the per-theta ridge of u plus the
/// classification of {u >= u_max - eps_loc} as a closed curve or isolated
/// points, by the theta-fraction the near-maximal set spans.
struct MaxSetEstimate {
  enum class Kind { Curve, Points };
  Kind kind = Kind::Curve;
  bool ambiguous = false;      // span fraction fell in (0.1, 0.9)
  double u_max = 0.0;
  double eps_loc = 0.0;
  double span_fraction = 0.0;
  Eigen::VectorXd ridge_s;     // per theta: argmax of u along the radial line
  Eigen::VectorXd ridge_r;     // per theta: radius of the ridge point
  Eigen::VectorXd ridge_u;     // per theta: ridge value
  std::vector<std::array<double, 2>> samples;  // planar points, qualifying theta only
};

/// Multiplicative views of a solution under the scaling u -> lam^2 u(x/lam).
struct Scaling {
  double lam = 1.0;
  double u(double v) const { return lam * lam * v; }
  double grad(double v) const { return lam * v; }
  double grad_sq(double v) const { return lam * lam * v; }
  double length(double v) const { return lam * v; }
  double curvature(double v) const { return v / lam; }
};

/// Discrete solution of Delta u = -2, u = 0 on the boundary-fitted tensor
/// grid (s, theta), s in [0,1] mapped per theta onto the radial interval
/// [lambda + v1(theta), 1 - v2(theta)].
class Field {
 public:
  Field(RingDomain dom, int n_theta, int n_r);

  const RingDomain& domain() const { return dom_; }
  int n_theta() const { return tg_.n; }
  int n_r() const { return rg_.n; }
  const RadialGrid& radial() const { return rg_; }
  const FourierGrid& fourier() const { return tg_; }

  const Eigen::MatrixXd& u() const { return u_; }       // n_r x n_theta
  const Eigen::MatrixXd& u_s() const { return us_; }
  const Eigen::MatrixXd& u_theta() const { return ut_; }

  double solve_residual() const { return residual_; }
  int iterations() const { return iterations_; }

  // geometry of the radial mapping r = a(theta) + s L(theta)
  double a(int m) const { return a_[m]; }
  double b(int m) const { return b_[m]; }
  double L(int m) const { return L_[m]; }
  double ap(int m) const { return ap_[m]; }
  double bp(int m) const { return bp_[m]; }
  double Lp(int m) const { return Lp_[m]; }
  double app(int m) const { return app_[m]; }
  double bpp(int m) const { return bpp_[m]; }
  double Lpp(int m) const { return Lpp_[m]; }
  double radius(double s, int m) const { return a_[m] + s * L_[m]; }
  /// ds/dtheta at fixed r (the mapping shear)
  double shear(double s, int m) const { return -(ap_[m] + s * Lp_[m]) / L_[m]; }
  /// d(shear)/ds at fixed theta
  double shear_s(int m) const { return -Lp_[m] / L_[m]; }
  /// d(shear)/dtheta at fixed s
  double shear_theta(double s, int m) const {
    return -(app_[m] + s * Lpp_[m]) / L_[m] +
           (ap_[m] + s * Lp_[m]) * Lp_[m] / (L_[m] * L_[m]);
  }

  // interpolation along the radial line theta_m
  double value(double s, int m) const { return rg_.interp(u_.col(m), s); }
  double dvalue_ds(double s, int m) const { return rg_.interp(us_.col(m), s); }
  double dvalue_dtheta(double s, int m) const { return rg_.interp(ut_.col(m), s); }

  /// |grad u|^2 at an arbitrary point of the radial line theta_m.
  double grad_norm_sq(double s, int m) const;
  /// |grad u|^2 at a grid node.
  double grad_norm_sq_node(int i, int m) const;

  const MaxSetEstimate& max_set() const;
  double u_max() const { return max_set().u_max; }

  BoundaryTrace boundary_trace(Which which, NormalConvention conv) const;

  /// Maximum of |grad u| over a boundary component divided by sqrt(2 u_max).
  double nwss(Which which) const;

  /// Scale factor aligning u_max with the model value u_max(R).
  Scaling normalize(double R) const;

 private:
  RingDomain dom_;
  FourierGrid tg_;
  RadialGrid rg_;
  Eigen::MatrixXd u_, us_, ut_;
  Eigen::VectorXd a_, b_, L_, ap_, bp_, Lp_, app_, bpp_, Lpp_;
  double residual_ = 0.0;
  int iterations_ = 0;
  mutable std::optional<MaxSetEstimate> max_set_;

  friend Field solve_poisson(const RingDomain&, int, int, const SolveOptions&);
};

/// Solve the Poisson problem on the given domain. Spectral collocation:
/// Fourier in theta, Chebyshev-Lobatto in s. Symmetric domains decouple into
/// per-mode block systems (which double as the preconditioner of the coupled
/// iteration on perturbed domains).
Field solve_poisson(const RingDomain& domain, int n_theta, int n_r,
                    const SolveOptions& opts = {});

}  // namespace ringflow
