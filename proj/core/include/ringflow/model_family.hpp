#pragma once

#include <stdexcept>

namespace ringflow {

/// Which side of the critical wall-shear value sqrt(2) a measurement falls on.
enum class BranchKind { Outer, Inner, Critical };

/// Closed-form data of the rotationally symmetric ring solution with core
/// radius R: the annulus r_i(R) < |x| < 1 carrying u = (1-|x|^2)/2 + R^2 log|x|.
struct ModelSolution {
  double R = 0.0;
  double r_i = 0.0;      // inner boundary radius (0 for the disk case R = 0)
  double u_max = 0.0;
  double c_inner = 0.0;  // |grad u| on the inner boundary (undefined at R = 0)
  double c_outer = 0.0;  // |grad u| on the outer boundary
  double tau_i = 0.0;    // normalised wall shear stress, inner (undefined at R = 0)
  double tau_o = 0.0;    // normalised wall shear stress, outer
};

namespace model {

/// Smallest positive zero of rho -> 1 - rho^2 + 2 R^2 log(rho), in (0, R).
/// Solved in log(rho) so that the steep small-R roots keep full relative
/// accuracy (r_i(0.1) is about 2e-22).
double inner_radius(double R);

/// Inverse pairing: the core radius R with inner_radius(R) = lambda,
/// R = sqrt((1 - lambda^2) / (-2 log lambda)).
double lambda_to_core_radius(double lambda);

double u_max(double R);

/// u_R(r) = (1 - r^2)/2 + R^2 log r on [r_i(R), 1].
double potential(double R, double r);

/// |grad u_R|(r) = |r^2 - R^2| / r on [r_i(R), 1].
double gradient_norm(double R, double r);

/// Outer NWSS map tau_o : [0,1) -> [1, sqrt 2), strictly increasing.
double tau_outer(double R);

/// Inner NWSS map tau_i : (0,1] -> [sqrt 2, +inf), strictly decreasing.
double tau_inner(double R);

/// Inverse of tau_outer on [1, sqrt 2).
double invert_tau_outer(double tau);

/// Inverse of tau_inner on [sqrt 2, +inf).
double invert_tau_inner(double tau);

/// Expected core radius of a boundary measurement: dispatches on the
/// sqrt(2) threshold. Rejects tau < 1 (impossible for any region).
double expected_core_radius(double tau);

ModelSolution solution(double R);

/// Classify a NWSS value against sqrt(2) with an absolute tolerance.
BranchKind classify_nwss(double tau, double tol = 1e-9);

}  // namespace model
}  // namespace ringflow
