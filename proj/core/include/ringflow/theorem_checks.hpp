#pragma once

#include <string>
#include <vector>

#include "ringflow/pseudo_radial.hpp"
#include "ringflow/solver.hpp"

namespace ringflow {

/// Component of the domain relative to the detected maximum curve.
enum class Side { InnerRegion, OuterRegion };

struct CheckReport {
  std::string name;
  bool applicable = true;  // hypotheses of the underlying statement held
  bool pass = false;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool rigidity = false;   // near-equality detected (model calibration case)
  std::string note;
  std::vector<double> diagnostics;
};

/// One side of the field split at the ridge, with its wall shear data,
/// expected core radius and normalization.
struct RegionView {
  const Field* field = nullptr;
  Side side = Side::OuterRegion;
  BoundaryTrace trace;     // boundary component of the region (inward normal)
  double tau = 0.0;        // NWSS of that component
  BranchKind branch = BranchKind::Outer;
  double R_expected = 0.0;
  double r_i_expected = 0.0;
  Scaling scale;           // aligns u_max with the model at R_expected

  Which boundary_which() const {
    return side == Side::InnerRegion ? Which::Inner : Which::Outer;
  }
  double s_lo(int m) const;
  double s_hi(int m) const;
};

RegionView make_region(const Field& f, Side side, double critical_tol = 1e-9);

/// The near-maximal curve used for geometric checks: the Fourier-smoothed
/// per-theta ridge. `from_ridge_proxy` distinguishes a detected max curve
/// (Curve classification) from the ridge standing in for isolated maxima.
struct SigmaCurve {
  FourierSeries rho;
  double length = 0.0;
  std::vector<double> curvature;  // kappa of the curve, normal away from origin
  bool from_ridge_proxy = false;
};

SigmaCurve fit_sigma(const Field& f, int k_fit = -1);

/// Level curve of u inside one region, sampled per theta.
struct Contour {
  bool ok = false;           // every theta produced a crossing
  int n_missing = 0;
  Eigen::VectorXd s, rho, grad, dsigma;
  double length = 0.0;
  /// integral of |grad u| over the contour
  double flux = 0.0;
};

Contour extract_contour(const RegionView& rv, double level);

/// Closed-form level average of the model with core radius R:
/// U(t) = 2 pi |psi^2 - R^2| / (u_max - t) on the requested side.
double model_U(double R, Side side, double t);

// --- the check suite -------------------------------------------------------

CheckReport check_U_monotone(const RegionView& rv, const std::vector<double>& t_grid,
                             double tol = 1e-9);
CheckReport check_divergence_inequality(const RegionView& rv, double tol = 1e-9);
CheckReport check_gradient_estimate(const RegionView& rv, double tol = 1e-6,
                                    double rigidity_tol = 1e-6);
CheckReport check_pohozaev(const RegionView& rv, double tol = 1e-6);
BranchKind classify_region_by_pohozaev(const RegionView& rv, double const_tol = 1e-6);
CheckReport check_boundary_curvature_bound(const RegionView& rv, double tol = 1e-6);
CheckReport check_sigma_curvature_bound(const RegionView& rv, double tol = 1e-6);
CheckReport check_core_radius_pinch(const Field& f, double tol = 1e-6,
                                    double rigidity_tol = 1e-6);
CheckReport check_length_bounds(const RegionView& rv, double tol = 1e-6,
                                double const_grad_tol = 1e-6);
CheckReport check_crucial_identity(const RegionView& rv, double eps = 1e-3,
                                   double tol = 1e-4);
CheckReport check_W_expansion_near_sigma(const RegionView& rv, double delta = 0.02,
                                         double rel_tol = 0.05);

struct CheckSuiteOptions {
  double tol_gradient = 1e-6;
  double tol_pohozaev = 1e-4;
  double tol_curvature = 1e-3;
  double tol_length = 1e-3;
  double tol_pinch = 1e-3;
  double tol_identity = 1e-4;
  double expansion_rel_tol = 0.05;
  int n_levels = 40;
};

std::vector<CheckReport> run_all_checks(const Field& f, const CheckSuiteOptions& opts = {});

std::string reports_json(const std::vector<CheckReport>& reports);

/// True when every check that is applicable passed.
bool all_applicable_pass(const std::vector<CheckReport>& reports);

}  // namespace ringflow
