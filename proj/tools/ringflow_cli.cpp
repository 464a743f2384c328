// Command-line frontend: model tables, verification runs, spectrum dumps and
// branch tracing with reproducible file outputs.
//
// Exit codes: 0 success, 2 bad input/spec, 3 solver failure, 4 check failure,
// 5 truncated branch (partial output preserved).

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringflow/continuation.hpp"
#include "ringflow/io.hpp"
#include "ringflow/theorem_checks.hpp"

namespace fs = std::filesystem;
using namespace ringflow;

namespace {

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double start, stop, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
        step <= 0.0)
      throw std::invalid_argument("grid spec must be start:stop:step or v1,v2,...");
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
    return out;
  }
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw std::invalid_argument("empty grid spec");
  return out;
}

std::pair<int, int> parse_resolution(const std::string& spec) {
  int nt = 0, nr = 0;
  if (std::sscanf(spec.c_str(), "%dx%d", &nt, &nr) != 2)
    throw std::invalid_argument("resolution must be NTHETAxNR, e.g. 64x48");
  return {nt, nr};
}

fs::path out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("RINGFLOW_OUT_DIR")) return env;
  return ".";
}

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
}

int cmd_model_table(const std::string& grid, const std::string& out) {
  auto R_grid = parse_grid(grid);
  for (double R : R_grid)
    if (!(R >= 0.0 && R < 1.0))
      throw std::invalid_argument("model-table: grid values must lie in [0,1)");
  fs::path dir = out_dir(out);
  ensure_dir(dir);
  write_file((dir / "model_table.csv").string(), model_table_csv(R_grid));
  std::cout << "wrote " << (dir / "model_table.csv").string() << " (" << R_grid.size()
            << " rows)\n";
  return 0;
}

std::string gradient_gap_csv(const Field& f) {
  std::string out = "region,theta,s,W_normalized,W_model,gap\n";
  for (Side side : {Side::OuterRegion, Side::InnerRegion}) {
    RegionView rv = make_region(f, side);
    if (rv.branch == BranchKind::Critical) continue;
    PseudoRadial pr(rv.R_expected,
                    rv.tau > kSqrt2 ? Branch::Minus : Branch::Plus);
    const char* tag = side == Side::OuterRegion ? "outer" : "inner";
    for (int m = 0; m < f.n_theta(); ++m) {
      for (int i = 0; i < f.n_r(); ++i) {
        double s = f.radial().s[i];
        if (s < rv.s_lo(m) - 1e-12 || s > rv.s_hi(m) + 1e-12) continue;
        double up = std::clamp(rv.scale.u(f.u()(i, m)), 0.0, pr.u_max());
        double Wp = rv.scale.grad_sq(f.grad_norm_sq_node(i, m));
        double WR = pr.w_model(up);
        out += std::string(tag) + ',' + format_double(f.fourier().theta[m]) + ',' +
               format_double(s) + ',' + format_double(Wp) + ',' + format_double(WR) +
               ',' + format_double(Wp - WR) + '\n';
      }
    }
  }
  return out;
}

int cmd_verify(const std::string& spec_path, const std::string& res,
               const std::string& out, bool dump, double tol_override, int n_random,
               unsigned seed) {
  auto [nt, nr] = parse_resolution(res);
  fs::path dir = out_dir(out);
  ensure_dir(dir);

  if (n_random > 0) {
    // experimental record only: observed NWSS per region on random domains
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lam_d(0.2, 0.5), amp_d(-0.01, 0.01);
    std::string csv = "index,lambda,tau_inner,tau_outer\n";
    for (int i = 0; i < n_random; ++i) {
      RingDomain d;
      d.lambda = lam_d(rng);
      d.v_inner = FourierSeries(5);
      d.v_outer = FourierSeries(5);
      for (int k = 2; k < 5; ++k) {
        d.v_inner.cos_c[k] = amp_d(rng);
        d.v_inner.sin_c[k] = amp_d(rng);
        d.v_outer.cos_c[k] = amp_d(rng);
        d.v_outer.sin_c[k] = amp_d(rng);
      }
      Field f = solve_poisson(d, nt, nr);
      csv += std::to_string(i) + "," + format_double(d.lambda) + "," +
             format_double(f.nwss(Which::Inner)) + "," +
             format_double(f.nwss(Which::Outer)) + "\n";
    }
    write_file((dir / "observed_tau.csv").string(), csv);
    std::cout << "wrote " << (dir / "observed_tau.csv").string() << "\n";
    return 0;
  }

  RingDomain dom = RingDomain::from_json(read_file(spec_path));
  Field f = solve_poisson(dom, nt, nr);
  CheckSuiteOptions opts;
  if (tol_override > 0.0) {
    opts.tol_gradient = opts.tol_pohozaev = opts.tol_curvature = opts.tol_length =
        opts.tol_pinch = opts.tol_identity = tol_override;
  }
  auto reports = run_all_checks(f, opts);
  write_file((dir / "check_report.json").string(), reports_json(reports));
  write_file((dir / "solve_report.json").string(), solve_report_json(f));
  if (dump) {
    write_file((dir / "field.csv").string(), field_csv(f));
    write_file((dir / "trace_inner.csv").string(),
               trace_csv(f.boundary_trace(Which::Inner, NormalConvention::Inward)));
    write_file((dir / "trace_outer.csv").string(),
               trace_csv(f.boundary_trace(Which::Outer, NormalConvention::Outward)));
    write_file((dir / "gradient_gap.csv").string(), gradient_gap_csv(f));
  }
  int failures = 0;
  for (const auto& r : reports) {
    std::cout << (r.applicable ? (r.pass ? "pass " : "FAIL ") : "n/a  ") << r.name
              << "  worst=" << format_double(r.worst_violation)
              << (r.rigidity ? "  [rigidity]" : "") << "\n";
    if (r.applicable && !r.pass) ++failures;
  }
  std::cout << "report: " << (dir / "check_report.json").string() << "\n";
  return failures == 0 ? 0 : 4;
}

int cmd_spectrum(const std::string& lambda_grid, const std::string& k_grid,
                 const std::string& out) {
  auto lams = parse_grid(lambda_grid);
  auto ks = parse_grid(k_grid);
  for (double l : lams)
    if (!(l > 0.0 && l < 1.0))
      throw std::invalid_argument("spectrum: lambda grid must lie in (0,1)");
  std::string csv = "lambda,k,T,D,mu1,mu2\n";
  for (double l : lams)
    for (double k : ks) {
      SpectralPoint sp = spectrum::spectral_point(l, k);
      csv += format_double(l);
      csv += ',';
      csv += format_double(k);
      csv += ',';
      csv += format_double(sp.T);
      csv += ',';
      csv += format_double(sp.D);
      csv += ',';
      csv += format_double(sp.mu1);
      csv += ',';
      csv += format_double(sp.mu2);
      csv += '\n';
    }
  fs::path dir = out_dir(out);
  ensure_dir(dir);
  write_file((dir / "spectrum.csv").string(), csv);
  std::cout << "wrote " << (dir / "spectrum.csv").string() << "\n";
  return 0;
}

int cmd_bifurcation_points(int k_max, const std::string& out) {
  if (k_max < 2) throw std::invalid_argument("bifurcation-points: k-max must be >= 2");
  nlohmann::json arr = nlohmann::json::array();
  for (int k = 2; k <= k_max; ++k) {
    BifurcationPoint bp = spectrum::find_bifurcation_point(k);
    ZeroConditionReport rep = spectrum::verify_zero_condition(bp);
    nlohmann::json j;
    j["k"] = k;
    j["lambda_k"] = bp.lambda_k;
    j["dmu1_dlambda"] = bp.dmu1_dlambda;
    j["zero_condition_residual"] = rep.residual;
    j["strict_margin"] = rep.margin;
    j["kcoth_margin"] = rep.kcoth_margin;
    arr.push_back(j);
  }
  fs::path dir = out_dir(out);
  ensure_dir(dir);
  write_file((dir / "bifurcation_points.json").string(), arr.dump(2));
  std::cout << "wrote " << (dir / "bifurcation_points.json").string() << "\n";
  return 0;
}

int cmd_branch(int k, int steps, double ds, const std::string& res,
               const std::string& out, const std::string& format) {
  auto [nt, nr] = parse_resolution(res);
  ContinuationOptions opts;
  opts.n_theta = nt;
  opts.n_r = nr;
  ContinuationResult cres = continue_branch(k, steps, ds, opts);
  std::vector<Certification> certs;
  bool all_ok = true;
  for (const auto& p : cres.points) {
    if (p.s == 0.0) {
      certs.emplace_back();
      certs.back().ok = true;
      certs.back().R_inner = certs.back().R_outer =
          model::lambda_to_core_radius(p.lambda);
      continue;
    }
    certs.push_back(certify_branch_point(p, opts));
    if (!certs.back().ok) {
      all_ok = false;
      std::cout << "certification FAILED at s=" << format_double(p.s) << ": "
                << certs.back().failure << "\n";
    }
  }
  fs::path dir = out_dir(out);
  ensure_dir(dir);
  if (format != "csv")
    write_file((dir / "branch.json").string(), branch_json(cres));
  if (format != "json")
    write_file((dir / "branch_summary.csv").string(),
               branch_summary_csv(cres.points, certs));
  std::cout << "wrote " << (dir / "branch.json").string() << " ("
            << cres.points.size() << " points)\n";
  if (cres.truncated) {
    std::cout << "branch truncated: " << cres.diagnostic << "\n";
    return 5;
  }
  return all_ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laminar-flow solutions on ring-shaped pipe cross sections"};
  app.require_subcommand(1);

  std::string grid = "0:0.9:0.1", out, res = "64x48";
  auto* mt = app.add_subcommand("model-table", "closed-form model family table");
  mt->add_option("--grid", grid, "core radius grid (start:stop:step or list)");
  mt->add_option("--out", out, "output directory");

  std::string spec_path, lambda_grid = "0.02:0.98:0.02", k_grid = "0:10:1";
  bool dump = false;
  double tol_override = -1.0;
  int n_random = 0, k_max = 10, k_branch = 2, steps = 3;
  unsigned seed = 1;
  double ds = 0.01;

  auto* vf = app.add_subcommand("verify", "solve a domain spec and run the check suite");
  vf->add_option("spec", spec_path, "domain spec JSON file");
  vf->add_option("--resolution", res, "grid NTHETAxNR");
  vf->add_option("--out", out, "output directory");
  vf->add_option("--tol", tol_override, "override check tolerances");
  vf->add_flag("--dump", dump, "dump per-sample CSV diagnostics");
  vf->add_option("--random", n_random, "record NWSS on N random domains instead");
  vf->add_option("--seed", seed, "seed for --random");

  auto* sp = app.add_subcommand("spectrum", "trace/determinant/eigenvalue grid dump");
  sp->add_option("--lambda-grid", lambda_grid, "lambda grid");
  sp->add_option("--k-grid", k_grid, "mode grid");
  sp->add_option("--out", out, "output directory");

  auto* bp = app.add_subcommand("bifurcation-points", "bifurcation point table");
  bp->add_option("--k-max", k_max, "largest mode");
  bp->add_option("--out", out, "output directory");

  std::string format = "both";
  auto* br = app.add_subcommand("branch", "trace a branch of non-symmetric solutions");
  br->add_option("--format", format, "outputs to write: json, csv or both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  br->add_option("--k", k_branch, "bifurcating frequency (>= 2)");
  br->add_option("--steps", steps, "steps per sign of the branch parameter");
  br->add_option("--ds", ds, "branch parameter step");
  br->add_option("--resolution", res, "grid NTHETAxNR");
  br->add_option("--out", out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mt->parsed()) return cmd_model_table(grid, out);
    if (vf->parsed()) {
      if (spec_path.empty() && n_random == 0) {
        std::cerr << "verify: domain spec file required\n";
        return 2;
      }
      return cmd_verify(spec_path, res, out, dump, tol_override, n_random, seed);
    }
    if (sp->parsed()) return cmd_spectrum(lambda_grid, k_grid, out);
    if (bp->parsed()) return cmd_bifurcation_points(k_max, out);
    if (br->parsed()) return cmd_branch(k_branch, steps, ds, res, out, format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
