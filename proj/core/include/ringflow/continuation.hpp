#pragma once

#include <string>
#include <vector>

#include "ringflow/bifurcation.hpp"
#include "ringflow/solver.hpp"
#include "ringflow/theorem_checks.hpp"

namespace ringflow {

/// Reflection-symmetry restriction: boundary perturbations built from cosine
/// modes at frequencies {0, g, 2g, ...}.
struct SymmetryGroup {
  int g = 2;
  std::vector<int> frequencies(int count) const {
    std::vector<int> f(count);
    for (int i = 0; i < count; ++i) f[i] = i * g;
    return f;
  }
};

/// Cosine coefficients of (v1, v2) at a fixed list of admitted frequencies.
struct PerturbationVector {
  std::vector<int> freqs;
  Eigen::VectorXd inner;  // coefficients of v1
  Eigen::VectorXd outer;  // coefficients of v2

  FourierSeries inner_series() const;
  FourierSeries outer_series() const;
  double sup_norm() const;
};

/// Deviation of the inward wall gradients from the model constants of the
/// base radius lambda, sampled at the collocation angles.
struct ShootingResidual {
  Eigen::VectorXd inner_trace, outer_trace;
  Eigen::VectorXd inner_coeffs, outer_coeffs;  // projections at admitted freqs
  double solve_residual = 0.0;
  double sup() const {
    return std::max(inner_trace.cwiseAbs().maxCoeff(), outer_trace.cwiseAbs().maxCoeff());
  }
};

ShootingResidual shooting_residual(double lambda, const PerturbationVector& v,
                                   int n_theta, int n_r, const SolveOptions& sopts = {});

/// Central finite-difference linearization of the shooting map at frequency
/// k, projected on the orthonormal basis pair; comparable entrywise with the
/// closed-form spectral matrix.
struct FdLinearization {
  std::array<std::array<double, 2>, 2> m{};
  std::array<double, 2> eigenvalues{};
  bool step_warning = false;  // one-sided estimates disagreed > 1e-3 relative
};

FdLinearization fd_linearization(double lambda, int k, double h, int n_theta, int n_r);

/// Kernel direction at a bifurcation point, lifted to a perturbation vector
/// supported on frequency k and unit with respect to the weighted product.
PerturbationVector null_eigenvector(int k, double lambda_k,
                                    const std::vector<int>& freqs);

struct BranchPoint {
  double s = 0.0;
  double lambda = 0.0;
  PerturbationVector v;
  double residual_sup = 0.0;
  double mode_amplitude = 0.0;  // weighted norm of the frequency-k component
  double nwss_inner = 0.0;
  double nwss_outer = 0.0;
};

struct ContinuationOptions {
  int n_freqs = 8;          // admitted frequencies carried as unknowns
  int n_theta = 64;
  int n_r = 48;
  double tol_newton = 1e-10;
  int max_newton = 12;
  double fd_step = 1e-6;
  SolveOptions solve;
};

struct ContinuationResult {
  std::vector<BranchPoint> points;  // ordered by s, includes the trivial point
  bool truncated = false;
  std::string diagnostic;
};

ContinuationResult continue_branch(int k, int n_steps, double ds,
                                   const ContinuationOptions& opts = {});

struct Certification {
  bool ok = false;
  double residual_low = 0.0;    // shooting residual at the working resolution
  double residual_high = 0.0;   // after re-solving at higher resolution
  double grad_dev_inner = 0.0;  // deviation of |grad u| from constancy
  double grad_dev_outer = 0.0;
  double tau_inner = 0.0, tau_outer = 0.0;
  double R_inner = 0.0, R_outer = 0.0;  // expected core radii
  double theorem_gap = 0.0;             // R_outer - R_inner
  std::vector<CheckReport> reports;
  std::string failure;
};

Certification certify_branch_point(const BranchPoint& bp,
                                   const ContinuationOptions& opts = {});

std::string branch_json(const ContinuationResult& res);
std::string branch_summary_csv(const std::vector<BranchPoint>& pts,
                               const std::vector<Certification>& certs);

}  // namespace ringflow
