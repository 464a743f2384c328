#include "ringflow/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "ringflow/numerics.hpp"

namespace ringflow {

namespace {

FourierSeries series_from_coeffs(const std::vector<int>& freqs,
                                 const Eigen::VectorXd& c) {
  int kmax = freqs.empty() ? 0 : freqs.back();
  FourierSeries f(kmax + 1);
  for (size_t j = 0; j < freqs.size(); ++j) f.cos_c[freqs[j]] += c(j);
  return f;
}

/// cosine-basis projection (1/pi normalization for k>0, 1/2pi for k=0)
double cos_coeff(const Eigen::VectorXd& trace, int n, int k) {
  double acc = 0.0;
  for (int m = 0; m < n; ++m) acc += trace[m] * std::cos(2.0 * kPi * m * k / n);
  return acc * ((k == 0) ? 1.0 : 2.0) / n;
}

}  // namespace

FourierSeries PerturbationVector::inner_series() const {
  return series_from_coeffs(freqs, inner);
}

FourierSeries PerturbationVector::outer_series() const {
  return series_from_coeffs(freqs, outer);
}

double PerturbationVector::sup_norm() const {
  return std::max(inner.cwiseAbs().sum(), outer.cwiseAbs().sum());
}

ShootingResidual shooting_residual(double lambda, const PerturbationVector& v,
                                   int n_theta, int n_r, const SolveOptions& sopts) {
  RingDomain dom;
  dom.lambda = lambda;
  dom.v_inner = v.inner_series();
  dom.v_outer = v.outer_series();
  Field f = solve_poisson(dom, n_theta, n_r, sopts);
  double R = model::lambda_to_core_radius(lambda);
  double c_i = (R * R - lambda * lambda) / lambda;
  double c_o = 1.0 - R * R;
  BoundaryTrace ti = f.boundary_trace(Which::Inner, NormalConvention::Inward);
  BoundaryTrace to = f.boundary_trace(Which::Outer, NormalConvention::Inward);
  ShootingResidual r;
  r.inner_trace = ti.normal_derivative.array() - c_i;
  r.outer_trace = to.normal_derivative.array() - c_o;
  r.inner_coeffs.resize(v.freqs.size());
  r.outer_coeffs.resize(v.freqs.size());
  for (size_t j = 0; j < v.freqs.size(); ++j) {
    r.inner_coeffs(j) = cos_coeff(r.inner_trace, n_theta, v.freqs[j]);
    r.outer_coeffs(j) = cos_coeff(r.outer_trace, n_theta, v.freqs[j]);
  }
  r.solve_residual = f.solve_residual();
  return r;
}

FdLinearization fd_linearization(double lambda, int k, double h, int n_theta, int n_r) {
  if (!(h >= 1e-5 / 10 && h <= 1e-3 * 10))
    throw std::domain_error("fd_linearization: step outside the supported range");
  std::vector<int> freqs = {k};
  const double sl = std::sqrt(lambda);
  const double yamp = 1.0 / std::sqrt(kPi);  // unit-L2 cosine
  FdLinearization out;
  std::array<std::array<double, 2>, 2> fwd{}, bwd{};
  for (int col = 0; col < 2; ++col) {
    auto eval = [&](double t) {
      PerturbationVector v;
      v.freqs = freqs;
      v.inner = Eigen::VectorXd::Zero(1);
      v.outer = Eigen::VectorXd::Zero(1);
      if (col == 0)
        v.inner(0) = t * yamp / sl;
      else
        v.outer(0) = t * yamp;
      ShootingResidual r = shooting_residual(lambda, v, n_theta, n_r);
      // projections onto the basis pair: <.,e1> = sqrt(lambda pi) c_k(inner),
      // <.,e2> = sqrt(pi) c_k(outer)
      double g1 = std::sqrt(kPi) * r.inner_coeffs(0) * sl;
      double g2 = std::sqrt(kPi) * r.outer_coeffs(0);
      return std::array<double, 2>{g1, g2};
    };
    auto p = eval(h);
    auto mth = eval(-h);
    out.m[0][col] = (p[0] - mth[0]) / (2.0 * h);
    out.m[1][col] = (p[1] - mth[1]) / (2.0 * h);
    fwd[0][col] = p[0] / h;
    fwd[1][col] = p[1] / h;
    bwd[0][col] = -mth[0] / h;
    bwd[1][col] = -mth[1] / h;
  }
  double scale = 0.0;
  for (auto& row : out.m)
    for (double e : row) scale = std::max(scale, std::abs(e));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(fwd[i][j] - bwd[i][j]) > 1e-3 * std::max(scale, 1.0))
        out.step_warning = true;
  double tr = out.m[0][0] + out.m[1][1];
  double det = out.m[0][0] * out.m[1][1] - out.m[0][1] * out.m[1][0];
  double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  out.eigenvalues = {(tr - disc) / 2.0, (tr + disc) / 2.0};
  return out;
}

PerturbationVector null_eigenvector(int k, double lambda_k,
                                    const std::vector<int>& freqs) {
  SpectralPoint sp = spectrum::spectral_point(lambda_k, k);
  const auto& M = sp.m_entries;
  // eigenvector of the 2x2 matrix for the eigenvalue closest to zero (mu1)
  double mu = sp.mu1;
  Eigen::Vector2d w1(M[0][1], mu - M[0][0]);
  Eigen::Vector2d w2(mu - M[1][1], M[1][0]);
  Eigen::Vector2d w = (w1.norm() >= w2.norm()) ? w1 : w2;
  w.normalize();  // coordinates in the orthonormal basis: unit weighted norm
  PerturbationVector z;
  z.freqs = freqs;
  z.inner = Eigen::VectorXd::Zero(freqs.size());
  z.outer = Eigen::VectorXd::Zero(freqs.size());
  auto it = std::find(freqs.begin(), freqs.end(), k);
  if (it == freqs.end()) throw std::invalid_argument("null_eigenvector: k not admitted");
  int jk = int(it - freqs.begin());
  double yamp = 1.0 / std::sqrt(kPi);
  z.inner(jk) = w(0) * yamp / std::sqrt(lambda_k);
  z.outer(jk) = w(1) * yamp;
  return z;
}

namespace {

/// weighted product of two coefficient vectors:
/// <v,w> = lambda int v1 w1 + int v2 w2, cosine orthogonality on the circle
double weighted_dot(double lambda, const PerturbationVector& a,
                    const PerturbationVector& b) {
  double acc = 0.0;
  for (size_t j = 0; j < a.freqs.size(); ++j) {
    double w = (a.freqs[j] == 0) ? 2.0 * kPi : kPi;
    acc += w * (lambda * a.inner(j) * b.inner(j) + a.outer(j) * b.outer(j));
  }
  return acc;
}

struct NewtonState {
  Eigen::VectorXd x;  // [inner coeffs, outer coeffs, lambda]
};

PerturbationVector unpack(const std::vector<int>& freqs, const Eigen::VectorXd& x) {
  int M = int(freqs.size());
  PerturbationVector v;
  v.freqs = freqs;
  v.inner = x.segment(0, M);
  v.outer = x.segment(M, M);
  return v;
}

}  // namespace

ContinuationResult continue_branch(int k, int n_steps, double ds,
                                   const ContinuationOptions& opts) {
  SymmetryGroup group{k};  // frequencies 0, k, 2k, ... (the paper's example is k = 2)
  std::vector<int> freqs = group.frequencies(opts.n_freqs);
  BifurcationPoint bp = spectrum::find_bifurcation_point(k);
  PerturbationVector z = null_eigenvector(k, bp.lambda_k, freqs);
  const int M = int(freqs.size());
  const int n_unknown = 2 * M + 1;

  auto residual_system = [&](const Eigen::VectorXd& x, double s,
                             double* sup_out) -> Eigen::VectorXd {
    PerturbationVector v = unpack(freqs, x);
    double lambda = x(n_unknown - 1);
    ShootingResidual r = shooting_residual(lambda, v, opts.n_theta, opts.n_r, opts.solve);
    Eigen::VectorXd G(n_unknown);
    G.segment(0, M) = r.inner_coeffs;
    G.segment(M, M) = r.outer_coeffs;
    G(n_unknown - 1) = weighted_dot(lambda, v, z) - s;
    if (sup_out) *sup_out = r.sup();
    return G;
  };

  ContinuationResult result;
  BranchPoint trivial;
  trivial.s = 0.0;
  trivial.lambda = bp.lambda_k;
  trivial.v = unpack(freqs, Eigen::VectorXd::Zero(n_unknown));
  trivial.residual_sup = 0.0;
  {
    ModelSolution ms = model::solution(model::lambda_to_core_radius(bp.lambda_k));
    trivial.nwss_inner = ms.tau_i;
    trivial.nwss_outer = ms.tau_o;
  }
  result.points.push_back(trivial);

  auto make_point = [&](double s, const Eigen::VectorXd& x, double res_sup) {
    BranchPoint p;
    p.s = s;
    p.lambda = x(n_unknown - 1);
    p.v = unpack(freqs, x);
    p.residual_sup = res_sup;
    auto it = std::find(freqs.begin(), freqs.end(), k);
    int jk = int(it - freqs.begin());
    double a_in = p.v.inner(jk), a_out = p.v.outer(jk);
    double norm_k = std::sqrt(kPi * (p.lambda * a_in * a_in + a_out * a_out));
    p.mode_amplitude = std::copysign(norm_k, weighted_dot(p.lambda, p.v, z));
    RingDomain dom;
    dom.lambda = p.lambda;
    dom.v_inner = p.v.inner_series();
    dom.v_outer = p.v.outer_series();
    Field f = solve_poisson(dom, opts.n_theta, opts.n_r, opts.solve);
    p.nwss_inner = f.nwss(Which::Inner);
    p.nwss_outer = f.nwss(Which::Outer);
    return p;
  };

  for (double dir : {+1.0, -1.0}) {
    Eigen::VectorXd x_prev = Eigen::VectorXd::Zero(n_unknown);
    x_prev(n_unknown - 1) = bp.lambda_k;
    Eigen::VectorXd x_prev2;
    bool have_two = false;
    for (int step = 1; step <= n_steps; ++step) {
      double s = dir * ds * step;
      Eigen::VectorXd x0;
      if (have_two)
        x0 = 2.0 * x_prev - x_prev2;  // secant predictor
      else {
        x0 = x_prev;
        x0.segment(0, M) += dir * ds * z.inner;
        x0.segment(M, M) += dir * ds * z.outer;
      }
      Eigen::VectorXd x = x0;
      bool converged = false;
      double res_sup = 0.0;
      Eigen::MatrixXd J(n_unknown, n_unknown);
      bool have_jacobian = false;
      try {
        Eigen::VectorXd G = residual_system(x, s, &res_sup);
        for (int it = 0; it < opts.max_newton; ++it) {
          if (G.cwiseAbs().maxCoeff() < opts.tol_newton && res_sup < 10 * opts.tol_newton) {
            converged = true;
            break;
          }
          if (!have_jacobian || it == 4 || it == 8) {
            for (int j = 0; j < n_unknown; ++j) {
              Eigen::VectorXd xp = x;
              xp(j) += opts.fd_step;
              Eigen::VectorXd Gp = residual_system(xp, s, nullptr);
              J.col(j) = (Gp - G) / opts.fd_step;
            }
            have_jacobian = true;
          }
          Eigen::VectorXd dx = J.partialPivLu().solve(G);
          x -= dx;
          G = residual_system(x, s, &res_sup);
        }
      } catch (const std::exception& e) {
        result.truncated = true;
        result.diagnostic = std::string("step s=") + format_double(s) + ": " + e.what();
        break;
      }
      if (!converged) {
        result.truncated = true;
        result.diagnostic = "Newton stalled at s=" + format_double(s) +
                            " (residual sup " + format_double(res_sup) + ")";
        break;
      }
      result.points.push_back(make_point(s, x, res_sup));
      x_prev2 = x_prev;
      x_prev = x;
      have_two = true;
    }
  }
  std::sort(result.points.begin(), result.points.end(),
            [](const BranchPoint& a, const BranchPoint& b) { return a.s < b.s; });
  return result;
}

Certification certify_branch_point(const BranchPoint& bp, const ContinuationOptions& opts) {
  Certification cert;
  cert.residual_low = bp.residual_sup;
  int nt = (opts.n_theta * 3 / 2 + 1) & ~1;  // next even
  int nr = opts.n_r * 3 / 2;
  ShootingResidual r = shooting_residual(bp.lambda, bp.v, nt, nr, opts.solve);
  cert.residual_high =
      std::max(r.inner_trace.cwiseAbs().maxCoeff(), r.outer_trace.cwiseAbs().maxCoeff());
  RingDomain dom;
  dom.lambda = bp.lambda;
  dom.v_inner = bp.v.inner_series();
  dom.v_outer = bp.v.outer_series();
  Field f = solve_poisson(dom, nt, nr, opts.solve);
  BoundaryTrace ti = f.boundary_trace(Which::Inner, NormalConvention::Inward);
  BoundaryTrace to = f.boundary_trace(Which::Outer, NormalConvention::Inward);
  cert.grad_dev_inner = ti.grad_norm.maxCoeff() - ti.grad_norm.minCoeff();
  cert.grad_dev_outer = to.grad_norm.maxCoeff() - to.grad_norm.minCoeff();
  cert.tau_inner = f.nwss(Which::Inner);
  cert.tau_outer = f.nwss(Which::Outer);
  cert.R_outer = model::expected_core_radius(cert.tau_outer);
  cert.R_inner = model::expected_core_radius(cert.tau_inner);
  cert.theorem_gap = cert.R_outer - cert.R_inner;

  CheckSuiteOptions copts;
  RegionView ro = make_region(f, Side::OuterRegion);
  RegionView ri = make_region(f, Side::InnerRegion);
  cert.reports.push_back(check_gradient_estimate(ro, copts.tol_gradient));
  cert.reports.push_back(check_gradient_estimate(ri, copts.tol_gradient));
  cert.reports.push_back(check_pohozaev(ro, copts.tol_pohozaev));
  cert.reports.push_back(check_pohozaev(ri, copts.tol_pohozaev));
  cert.reports.push_back(check_length_bounds(ro, copts.tol_length));
  cert.reports.push_back(check_length_bounds(ri, copts.tol_length));
  try {
    cert.reports.push_back(check_core_radius_pinch(f, copts.tol_pinch));
  } catch (const std::domain_error& e) {
    CheckReport rep;
    rep.name = "core_radius_pinch";
    rep.applicable = false;
    rep.note = e.what();
    cert.reports.push_back(rep);
  }
  double dev_tol = std::max(10.0 * f.solve_residual(), 2.0 * bp.residual_sup);
  bool grads_ok =
      std::max(cert.grad_dev_inner, cert.grad_dev_outer) <= std::max(dev_tol, 1e-8);
  bool checks_ok = all_applicable_pass(cert.reports);
  cert.ok = grads_ok && checks_ok;
  if (!grads_ok) cert.failure = "wall gradient not constant within tolerance";
  if (!checks_ok) {
    for (const auto& rep : cert.reports)
      if (rep.applicable && !rep.pass) cert.failure += (cert.failure.empty() ? "" : "; ") + rep.name;
  }
  return cert;
}

std::string branch_json(const ContinuationResult& res) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : res.points) {
    nlohmann::json j;
    j["s"] = p.s;
    j["lambda"] = p.lambda;
    j["freqs"] = p.v.freqs;
    j["v_inner"] = std::vector<double>(p.v.inner.data(), p.v.inner.data() + p.v.inner.size());
    j["v_outer"] = std::vector<double>(p.v.outer.data(), p.v.outer.data() + p.v.outer.size());
    j["residual_sup"] = p.residual_sup;
    j["mode_amplitude"] = p.mode_amplitude;
    j["nwss_inner"] = p.nwss_inner;
    j["nwss_outer"] = p.nwss_outer;
    arr.push_back(j);
  }
  nlohmann::json top;
  top["points"] = arr;
  top["truncated"] = res.truncated;
  if (!res.diagnostic.empty()) top["diagnostic"] = res.diagnostic;
  return top.dump(2);
}

std::string branch_summary_csv(const std::vector<BranchPoint>& pts,
                               const std::vector<Certification>& certs) {
  std::string out = "s,lambda,mode_amplitude,residual_sup,tau_i,tau_o,R_i,R_o\n";
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    out += format_double(p.s);
    out += ',';
    out += format_double(p.lambda);
    out += ',';
    out += format_double(p.mode_amplitude);
    out += ',';
    out += format_double(p.residual_sup);
    out += ',';
    out += format_double(p.nwss_inner);
    out += ',';
    out += format_double(p.nwss_outer);
    out += ',';
    if (i < certs.size()) {
      out += format_double(certs[i].R_inner);
      out += ',';
      out += format_double(certs[i].R_outer);
    } else {
      out += ',';
    }
    out += '\n';
  }
  return out;
}

}  // namespace ringflow
