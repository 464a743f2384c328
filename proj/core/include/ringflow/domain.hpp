#pragma once

#include <string>

#include "ringflow/numerics.hpp"

namespace ringflow {

/// A perturbed annulus { lambda + v1(theta) < |x| < 1 - v2(theta) } given by
/// the base inner radius and Fourier coefficients of the two boundary
/// perturbations.
struct RingDomain {
  double lambda = 0.5;
  FourierSeries v_inner;  // v1
  FourierSeries v_outer;  // v2

  double inner_radius(double theta) const { return lambda + v_inner.eval(theta); }
  double outer_radius(double theta) const { return 1.0 - v_outer.eval(theta); }
  double inner_radius_d(double theta) const { return v_inner.deriv(theta); }
  double outer_radius_d(double theta) const { return -v_outer.deriv(theta); }
  double inner_radius_d2(double theta) const { return v_inner.deriv2(theta); }
  double outer_radius_d2(double theta) const { return -v_outer.deriv2(theta); }

  bool symmetric() const { return v_inner.zero() && v_outer.zero(); }

  /// Checks 0 < lambda + v1 < 1 - v2 on a dense sample; throws on violation.
  void validate() const;

  /// JSON round trip for the domain-spec file format.
  std::string to_json() const;
  static RingDomain from_json(const std::string& text);
};

}  // namespace ringflow
