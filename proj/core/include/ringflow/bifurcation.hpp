#pragma once

#include <array>
#include <string>
#include <vector>

namespace ringflow {

/// Linearization data of the wall-gradient shooting operator restricted to a
/// single angular frequency k, at base inner radius lambda. The 2x2 matrix
/// acts on the orthonormal pair e1 = (Y/sqrt(lambda), 0), e2 = (0, Y) with Y
/// the unit-L2 eigenfunction of frequency k.
struct SpectralPoint {
  double lambda = 0.0;
  double k = 0.0;       // real k >= 0 supported; integers are the physical modes
  double R = 0.0;       // derived core radius, R^2 = (1-lambda^2)/(-2 log lambda)
  double c_i = 0.0;     // model wall gradient, inner
  double c_o = 0.0;     // model wall gradient, outer
  double T = 0.0;       // trace of the undeflated matrix
  double D = 0.0;       // determinant of the undeflated matrix
  double mu1 = 0.0;
  double mu2 = 0.0;
  std::array<std::array<double, 2>, 2> m_entries{};  // M = Mtilde - 2 Id
};

struct BifurcationPoint {
  int k = 0;
  double lambda_k = 0.0;
  double dmu1_dlambda = 0.0;  // negative at the crossing
};

struct ZeroConditionReport {
  double residual = 0.0;       // trace/determinant identity at mu1 = 0
  double margin = 0.0;         // strict inequality margin from the proof
  double kcoth_margin = 0.0;   // k coth(omega_k) - (1+R^2)/(1-R^2)
  bool pass = false;
};

struct MonotoneReport {
  bool mu1_increasing = false;
  bool mu2_increasing = false;
  double worst_step = 0.0;  // most negative consecutive difference
};

namespace spectrum {

SpectralPoint spectral_point(double lambda, double k);

double mu1(double lambda, double k);
double mu2(double lambda, double k);

/// Analytic derivative of mu1 with respect to lambda (closed-form T', D').
double dmu1_dlambda(double lambda, double k);

/// The positive discriminant T^2 - 4D assembled from its decomposition as a
/// square plus a sinh term; equals trace_det discriminant to rounding.
double discriminant_decomposition(double lambda, double k);

BifurcationPoint find_bifurcation_point(int k);

MonotoneReport verify_monotone_in_k(double lambda, const std::vector<double>& k_grid);

/// Large-k slopes: lim T/k and lim D/T^2.
std::array<double, 2> asymptotic_slopes(double lambda);

ZeroConditionReport verify_zero_condition(const BifurcationPoint& bp);

}  // namespace spectrum
}  // namespace ringflow
