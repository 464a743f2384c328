#pragma once

#include <vector>

#include "ringflow/model_family.hpp"

namespace ringflow {

/// Branch of the inverse of u_R along the radial coordinate: Plus inverts on
/// [R, 1] (outer, decreasing in u), Minus on [r_i(R), R] (inner, increasing).
enum class Branch { Plus, Minus };

/// Result of fitting W_R against a0 (u_max - u) + a1 (u_max - u)^{3/2}
/// near the maximum level.
struct ExpansionFit {
  double a0 = 0.0;
  double a1 = 0.0;
  double dev_a0 = 0.0;  // |a0 - 4|
  double dev_a1 = 0.0;  // |a1 - (-+ 8/(3R))|, sign per branch
};

/// Monotone branch inversion psi with u = (1 - psi^2 + 2 R^2 log psi)/2 and
/// the comparison function W_R = ((psi^2 - R^2)/psi)^2 evaluated through it.
///
/// R = 0 (the disk solution) degenerates to the closed forms
/// psi_plus = sqrt(1 - 2u), W_0 = 1 - 2u; only the Plus branch exists there.
class PseudoRadial {
 public:
  PseudoRadial(double R, Branch branch);

  double R() const { return R_; }
  Branch branch() const { return branch_; }
  double u_max() const { return u_max_; }
  double r_inner() const { return r_i_; }

  /// The unique psi in the branch range with u = (1 - psi^2 + 2R^2 log psi)/2,
  /// defining-equation residual below 1e-13. u = u_max returns exactly R.
  double psi(double u) const;

  /// d psi / du = -psi/(psi^2 - R^2). Diverges at u = u_max (throws).
  double psi_dot(double u) const;

  /// d^2 psi / du^2 = 2 psi_dot^3 + psi_dot^2 / psi. Throws at u = u_max.
  double psi_ddot(double u) const;

  /// W_R(u) = ((psi^2 - R^2)/psi)^2, continuous with W_R(u_max) = 0.
  double w_model(double u) const;

  /// Fit W_R ~ a0 e + a1 e^{3/2} (e = u_max - u) on e in (0, delta].
  /// Two de-aliasing terms e^2, e^{5/2} are carried in the basis and
  /// dropped from the report. Expected: a0 -> 4, a1 -> -8/(3R) on Plus,
  /// +8/(3R) on Minus.
  ExpansionFit expansion_check(double delta, int n_samples = 50) const;

 private:
  double R_ = 0.0;
  double r_i_ = 0.0;
  double u_max_ = 0.0;
  Branch branch_ = Branch::Plus;
  double range_lo_ = 0.0, range_hi_ = 0.0;

  void check_u(double u, bool allow_max) const;
};

}  // namespace ringflow
