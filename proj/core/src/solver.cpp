#include "ringflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ringflow/numerics.hpp"

namespace ringflow {

Field::Field(RingDomain dom, int n_theta, int n_r)
    : dom_(std::move(dom)), tg_(n_theta), rg_(n_r) {
  dom_.validate();
  const int nt = tg_.n;
  a_.resize(nt);
  b_.resize(nt);
  L_.resize(nt);
  ap_.resize(nt);
  bp_.resize(nt);
  Lp_.resize(nt);
  app_.resize(nt);
  bpp_.resize(nt);
  Lpp_.resize(nt);
  for (int m = 0; m < nt; ++m) {
    double t = tg_.theta[m];
    a_[m] = dom_.inner_radius(t);
    b_[m] = dom_.outer_radius(t);
    L_[m] = b_[m] - a_[m];
    ap_[m] = dom_.inner_radius_d(t);
    bp_[m] = dom_.outer_radius_d(t);
    Lp_[m] = bp_[m] - ap_[m];
    app_[m] = dom_.inner_radius_d2(t);
    bpp_[m] = dom_.outer_radius_d2(t);
    Lpp_[m] = bpp_[m] - app_[m];
    if (!(L_[m] > 1e-10))
      throw std::runtime_error("Field: mapping Jacobian degenerates");
  }
  u_.setZero(rg_.n, nt);
  us_.setZero(rg_.n, nt);
  ut_.setZero(rg_.n, nt);
}

double Field::grad_norm_sq(double s, int m) const {
  double usv = dvalue_ds(s, m);
  double utv = dvalue_dtheta(s, m);
  double r = radius(s, m);
  double ur = usv / L_[m];
  double ut_polar = utv + shear(s, m) * usv;
  return ur * ur + (ut_polar / r) * (ut_polar / r);
}

double Field::grad_norm_sq_node(int i, int m) const {
  double usv = us_(i, m);
  double utv = ut_(i, m);
  double s = rg_.s[i];
  double r = radius(s, m);
  double ur = usv / L_[m];
  double ut_polar = utv + shear(s, m) * usv;
  return ur * ur + (ut_polar / r) * (ut_polar / r);
}

const MaxSetEstimate& Field::max_set() const {
  if (max_set_) return *max_set_;
  const int nt = tg_.n;
  MaxSetEstimate est;
  est.ridge_s.resize(nt);
  est.ridge_r.resize(nt);
  est.ridge_u.resize(nt);
  for (int m = 0; m < nt; ++m) {
    int best = 0;
    for (int i = 1; i < rg_.n; ++i)
      if (u_(i, m) > u_(best, m)) best = i;
    double lo = rg_.s[std::max(0, best - 2)];
    double hi = rg_.s[std::min(rg_.n - 1, best + 2)];
    double s_star = golden_max([&](double s) { return value(s, m); }, lo, hi, 1e-13);
    // Newton polish on the interpolated radial derivative
    for (int it = 0; it < 3; ++it) {
      double g = dvalue_ds(s_star, m);
      double h = 1e-6;
      double gp = (dvalue_ds(s_star + h, m) - dvalue_ds(s_star - h, m)) / (2 * h);
      if (gp >= 0.0 || std::abs(g / gp) > 0.05) break;
      double next = s_star - g / gp;
      if (next <= lo || next >= hi) break;
      s_star = next;
    }
    est.ridge_s[m] = s_star;
    est.ridge_r[m] = radius(s_star, m);
    est.ridge_u[m] = value(s_star, m);
  }
  est.u_max = est.ridge_u.maxCoeff();
  est.eps_loc = 1e-8 * est.u_max;
  int count = 0;
  for (int m = 0; m < nt; ++m) {
    if (est.ridge_u[m] >= est.u_max - est.eps_loc) {
      ++count;
      double t = tg_.theta[m];
      est.samples.push_back({est.ridge_r[m] * std::cos(t), est.ridge_r[m] * std::sin(t)});
    }
  }
  est.span_fraction = double(count) / nt;
  est.kind = est.span_fraction > 0.9 ? MaxSetEstimate::Kind::Curve
                                     : MaxSetEstimate::Kind::Points;
  est.ambiguous = est.span_fraction > 0.1 && est.span_fraction < 0.9;
  max_set_ = std::move(est);
  return *max_set_;
}

BoundaryTrace Field::boundary_trace(Which which, NormalConvention conv) const {
  const int nt = tg_.n;
  BoundaryTrace tr;
  tr.which = which;
  tr.convention = conv;
  tr.theta = tg_.theta;
  tr.normal_derivative.resize(nt);
  tr.grad_norm.resize(nt);
  tr.curvature.resize(nt);
  tr.arclength_element.resize(nt);
  const int i = (which == Which::Inner) ? 0 : rg_.n - 1;
  const double s = rg_.s[i];
  for (int m = 0; m < nt; ++m) {
    double rho = (which == Which::Inner) ? a_[m] : b_[m];
    double rhop = (which == Which::Inner) ? ap_[m] : bp_[m];
    double rhopp = (which == Which::Inner) ? app_[m] : bpp_[m];
    double ur = us_(i, m) / L_[m];
    double ut_polar = ut_(i, m) + shear(s, m) * us_(i, m);
    double g = std::hypot(rho, rhop);
    // unit normal pointing away from the origin: (rho rhat - rho' thetahat)/g
    double dnu_away = (ur * rho - (ut_polar / rho) * rhop) / g;
    double sign;
    if (which == Which::Inner)
      sign = (conv == NormalConvention::Inward) ? 1.0 : -1.0;
    else
      sign = (conv == NormalConvention::Inward) ? -1.0 : 1.0;
    tr.normal_derivative[m] = sign * dnu_away;
    tr.grad_norm[m] = std::sqrt(ur * ur + (ut_polar / rho) * (ut_polar / rho));
    double kappa = (rho * rho + 2.0 * rhop * rhop - rho * rhopp) /
                   std::pow(rho * rho + rhop * rhop, 1.5);
    // stored with respect to the exterior normal of the domain
    tr.curvature[m] = (which == Which::Inner) ? -kappa : kappa;
    tr.arclength_element[m] = g;
  }
  tr.length = tr.arclength_element.sum() * (2.0 * kPi / nt);
  return tr;
}

double Field::nwss(Which which) const {
  BoundaryTrace tr = boundary_trace(which, NormalConvention::Outward);
  return periodic_max(tr.grad_norm) / std::sqrt(2.0 * u_max());
}

Scaling Field::normalize(double R) const {
  if (!(u_max() > 0.0)) throw std::runtime_error("normalize: u_max must be positive");
  return Scaling{std::sqrt(model::u_max(R) / u_max())};
}

// ---------------------------------------------------------------------------
// solve machinery

namespace {

struct Operator {
  const Field& f;
  Eigen::MatrixXd c_ss, c_st, c_tt, c_s;

  explicit Operator(const Field& field) : f(field) {
    const int nr = f.n_r(), nt = f.n_theta();
    c_ss.resize(nr, nt);
    c_st.resize(nr, nt);
    c_tt.resize(nr, nt);
    c_s.resize(nr, nt);
    for (int m = 0; m < nt; ++m) {
      double L = f.L(m);
      for (int i = 0; i < nr; ++i) {
        double s = f.radial().s[i];
        double r = f.radius(s, m);
        double mm = f.shear(s, m);
        c_ss(i, m) = 1.0 / (L * L) + mm * mm / (r * r);
        c_st(i, m) = 2.0 * mm / (r * r);
        c_tt(i, m) = 1.0 / (r * r);
        c_s(i, m) = 1.0 / (L * r) +
                    (f.shear_theta(s, m) + mm * f.shear_s(m)) / (r * r);
      }
    }
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& U) const {
    const auto& Dr = f.radial().d1;
    const auto& Dr2 = f.radial().d2;
    const auto& Dt = f.fourier().d1;
    const auto& Dt2 = f.fourier().d2;
    Eigen::MatrixXd Us = Dr * U;
    Eigen::MatrixXd R = c_ss.cwiseProduct(Dr2 * U) +
                        c_st.cwiseProduct(Us * Dt.transpose()) +
                        c_tt.cwiseProduct(U * Dt2.transpose()) +
                        c_s.cwiseProduct(Us);
    R.row(0) = U.row(0);
    R.row(f.n_r() - 1) = U.row(f.n_r() - 1);
    return R;
  }
};

/// Per-Fourier-mode Chebyshev block solver built from theta-averaged
/// coefficients. On a symmetric domain this is the exact decoupled system;
/// on perturbed domains it preconditions the coupled iteration.
struct ModeSolver {
  int nr, nt, n_modes;
  Eigen::MatrixXd cos_syn, sin_syn;  // (n_modes x nt) synthesis samples
  Eigen::MatrixXd cos_ana, sin_ana;  // analysis = scaled synthesis
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;

  ModeSolver(const Operator& op) : nr(op.f.n_r()), nt(op.f.n_theta()) {
    n_modes = nt / 2 + 1;
    cos_syn.resize(n_modes, nt);
    sin_syn.resize(n_modes, nt);
    cos_ana.resize(n_modes, nt);
    sin_ana.resize(n_modes, nt);
    for (int k = 0; k < n_modes; ++k) {
      double norm = (k == 0 || 2 * k == nt) ? 1.0 / nt : 2.0 / nt;
      for (int m = 0; m < nt; ++m) {
        double t = 2.0 * kPi * m * k / nt;
        cos_syn(k, m) = std::cos(t);
        sin_syn(k, m) = std::sin(t);
        cos_ana(k, m) = norm * cos_syn(k, m);
        sin_ana(k, m) = norm * sin_syn(k, m);
      }
    }
    Eigen::VectorXd css = op.c_ss.rowwise().mean();
    Eigen::VectorXd cs = op.c_s.rowwise().mean();
    Eigen::VectorXd ctt = op.c_tt.rowwise().mean();
    const auto& Dr = op.f.radial().d1;
    const auto& Dr2 = op.f.radial().d2;
    lu.reserve(n_modes);
    for (int k = 0; k < n_modes; ++k) {
      Eigen::MatrixXd P = css.asDiagonal() * Dr2 + cs.asDiagonal() * Dr;
      P -= double(k) * k * Eigen::MatrixXd(ctt.asDiagonal());
      P.row(0).setZero();
      P(0, 0) = 1.0;
      P.row(nr - 1).setZero();
      P(nr - 1, nr - 1) = 1.0;
      lu.emplace_back(P);
    }
  }

  Eigen::MatrixXd solve(const Eigen::MatrixXd& R) const {
    Eigen::MatrixXd C = R * cos_ana.transpose();  // nr x n_modes
    Eigen::MatrixXd S = R * sin_ana.transpose();
    for (int k = 0; k < n_modes; ++k) {
      C.col(k) = lu[k].solve(C.col(k).eval());
      if (k > 0 && 2 * k != nt) S.col(k) = lu[k].solve(S.col(k).eval());
    }
    return C * cos_syn + S * sin_syn;
  }
};

/// Right-preconditioned GMRES on the flattened system. Returns relative
/// residual achieved.
double gmres(const Operator& op, const ModeSolver& pre, const Eigen::MatrixXd& B,
             Eigen::MatrixXd& X, double tol, int max_iter, int* iters_out) {
  const int nr = B.rows(), nt = B.cols();
  const long N = long(nr) * nt;
  auto as_vec = [&](const Eigen::MatrixXd& M) {
    return Eigen::Map<const Eigen::VectorXd>(M.data(), N);
  };
  auto apply = [&](const Eigen::VectorXd& v) {
    Eigen::Map<const Eigen::MatrixXd> Vm(v.data(), nr, nt);
    Eigen::MatrixXd t = pre.solve(Vm);
    Eigen::MatrixXd r = op.apply(t);
    return Eigen::VectorXd(as_vec(r));
  };

  double beta = as_vec(B).norm();
  if (beta == 0.0) {
    X.setZero(nr, nt);
    if (iters_out) *iters_out = 0;
    return 0.0;
  }
  const int kmax = std::min<long>(max_iter, N);
  std::vector<Eigen::VectorXd> V;
  V.reserve(kmax + 1);
  V.push_back(as_vec(B) / beta);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(kmax + 1, kmax);
  Eigen::VectorXd cs = Eigen::VectorXd::Zero(kmax);
  Eigen::VectorXd sn = Eigen::VectorXd::Zero(kmax);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(kmax + 1);
  g(0) = beta;
  int j = 0;
  double rel = 1.0;
  for (; j < kmax; ++j) {
    Eigen::VectorXd w = apply(V[j]);
    for (int i = 0; i <= j; ++i) {
      H(i, j) = w.dot(V[i]);
      w -= H(i, j) * V[i];
    }
    // one re-orthogonalization pass
    for (int i = 0; i <= j; ++i) {
      double c = w.dot(V[i]);
      H(i, j) += c;
      w -= c * V[i];
    }
    double h_sub = w.norm();
    H(j + 1, j) = h_sub;
    if (h_sub > 0.0) V.push_back(w / h_sub);
    for (int i = 0; i < j; ++i) {
      double t = cs(i) * H(i, j) + sn(i) * H(i + 1, j);
      H(i + 1, j) = -sn(i) * H(i, j) + cs(i) * H(i + 1, j);
      H(i, j) = t;
    }
    double d = std::hypot(H(j, j), H(j + 1, j));
    cs(j) = H(j, j) / d;
    sn(j) = H(j + 1, j) / d;
    H(j, j) = d;
    H(j + 1, j) = 0.0;
    g(j + 1) = -sn(j) * g(j);
    g(j) = cs(j) * g(j);
    rel = std::abs(g(j + 1)) / beta;
    if (rel < tol || h_sub == 0.0) {
      ++j;
      break;
    }
  }
  // back substitution
  Eigen::VectorXd y = Eigen::VectorXd::Zero(j);
  for (int i = j - 1; i >= 0; --i) {
    double acc = g(i);
    for (int l = i + 1; l < j; ++l) acc -= H(i, l) * y(l);
    y(i) = acc / H(i, i);
  }
  Eigen::VectorXd xv = Eigen::VectorXd::Zero(N);
  for (int i = 0; i < j; ++i) xv += y(i) * V[i];
  Eigen::Map<const Eigen::MatrixXd> Xm(xv.data(), nr, nt);
  X = pre.solve(Xm);
  if (iters_out) *iters_out = j;
  return rel;
}

Eigen::MatrixXd dense_solve(const Operator& op, const Eigen::MatrixXd& B) {
  const int nr = B.rows(), nt = B.cols();
  const long N = long(nr) * nt;
  const auto& Dr = op.f.radial().d1;
  const auto& Dr2 = op.f.radial().d2;
  const auto& Dt = op.f.fourier().d1;
  const auto& Dt2 = op.f.fourier().d2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  auto idx = [nr](int i, int m) { return long(i) + long(nr) * m; };
  for (int m = 0; m < nt; ++m) {
    for (int i = 0; i < nr; ++i) {
      long row = idx(i, m);
      if (i == 0 || i == nr - 1) {
        A(row, row) = 1.0;
        continue;
      }
      for (int ip = 0; ip < nr; ++ip) {
        A(row, idx(ip, m)) += op.c_ss(i, m) * Dr2(i, ip) + op.c_s(i, m) * Dr(i, ip);
      }
      for (int mp = 0; mp < nt; ++mp) {
        A(row, idx(i, mp)) += op.c_tt(i, m) * Dt2(m, mp);
        for (int ip = 0; ip < nr; ++ip)
          A(row, idx(ip, mp)) += op.c_st(i, m) * Dr(i, ip) * Dt(m, mp);
      }
    }
  }
  Eigen::Map<const Eigen::VectorXd> b(B.data(), N);
  Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(b);
  return Eigen::Map<const Eigen::MatrixXd>(x.data(), nr, nt);
}

/// Chebyshev coefficient tail of the radial profiles plus the Fourier tail
/// across theta: a cheap a posteriori indicator of the discretization error.
double spectral_tail(const Field& f) {
  const int nr = f.n_r(), nt = f.n_theta();
  const int m_deg = nr - 1;
  double tail = 0.0;
  for (int m = 0; m < nt; ++m) {
    for (int k = m_deg - 1; k <= m_deg; ++k) {
      double a = 0.0;
      for (int j = 0; j <= m_deg; ++j) {
        double w = (j == 0 || j == m_deg) ? 0.5 : 1.0;
        // node j corresponds to x = cos(pi (m_deg - j)/m_deg) under our ordering
        a += w * f.u()(j, m) * std::cos(kPi * k * (m_deg - j) / m_deg);
      }
      tail = std::max(tail, std::abs(a * 2.0 / m_deg));
    }
  }
  int i_mid = nr / 2;
  for (int k = nt / 2 - 1; k <= nt / 2; ++k) {
    double ac = 0.0, as = 0.0;
    for (int m = 0; m < nt; ++m) {
      double t = 2.0 * kPi * m * k / nt;
      ac += f.u()(i_mid, m) * std::cos(t);
      as += f.u()(i_mid, m) * std::sin(t);
    }
    tail = std::max(tail, std::hypot(ac, as) * 2.0 / nt);
  }
  return tail;
}

}  // namespace

Field solve_poisson(const RingDomain& domain, int n_theta, int n_r,
                    const SolveOptions& opts) {
  if (n_theta < 16 || n_theta % 2 != 0)
    throw std::invalid_argument("solve_poisson: n_theta must be even and >= 16");
  if (n_r < 16) throw std::invalid_argument("solve_poisson: n_r must be >= 16");
  Field f(domain, n_theta, n_r);
  Operator op(f);
  ModeSolver pre(op);

  Eigen::MatrixXd B = Eigen::MatrixXd::Constant(n_r, n_theta, -2.0);
  B.row(0).setZero();
  B.row(n_r - 1).setZero();

  Eigen::MatrixXd U;
  int iters = 0;
  double rel = gmres(op, pre, B, U, opts.rel_tol, opts.max_iter, &iters);
  if (rel > opts.rel_tol * 100) {
    if (opts.dense_fallback && long(n_r) * n_theta <= 4096) {
      U = dense_solve(op, B);
      iters = -1;
    } else {
      throw std::runtime_error("solve_poisson: iteration stalled at relative residual " +
                               format_double(rel));
    }
  }
  U.row(0).setZero();
  U.row(n_r - 1).setZero();
  f.u_ = U;
  f.us_ = f.radial().d1 * U;
  f.ut_ = U * f.fourier().d1.transpose();
  f.iterations_ = iters;

  // discretization indicator: relative algebraic residual (the sup norm is
  // dominated by the n^4 growth of the stiffest collocation rows) plus the
  // spectral coefficient tails
  Eigen::MatrixXd res = op.apply(U) - B;
  double alg = std::sqrt(res.squaredNorm() / B.squaredNorm());
  f.residual_ = std::max(alg, spectral_tail(f));
  return f;
}

}  // namespace ringflow
