#include "ringflow/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ringflow/numerics.hpp"

namespace ringflow {

std::string model_table_csv(const std::vector<double>& R_grid) {
  std::string out = "R,r_i,u_max,c_inner,c_outer,tau_i,tau_o\n";
  for (double R : R_grid) {
    ModelSolution m = model::solution(R);
    out += format_double(m.R);
    out += ',';
    out += format_double(m.r_i);
    out += ',';
    out += format_double(m.u_max);
    out += ',';
    if (R > 0.0) out += format_double(m.c_inner);
    out += ',';
    out += format_double(m.c_outer);
    out += ',';
    if (R > 0.0) out += format_double(m.tau_i);
    out += ',';
    out += format_double(m.tau_o);
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string field_csv(const Field& f) {
  std::string out = "theta,s,x,y,u\n";
  for (int m = 0; m < f.n_theta(); ++m) {
    double t = f.fourier().theta[m];
    for (int i = 0; i < f.n_r(); ++i) {
      double s = f.radial().s[i];
      double r = f.radius(s, m);
      out += format_double(t);
      out += ',';
      out += format_double(s);
      out += ',';
      out += format_double(r * std::cos(t));
      out += ',';
      out += format_double(r * std::sin(t));
      out += ',';
      out += format_double(f.u()(i, m));
      out += '\n';
    }
  }
  return out;
}

std::string trace_csv(const BoundaryTrace& tr) {
  std::string out = "theta,dudnu,kappa,arclength_element\n";
  for (size_t m = 0; m < tr.theta.size(); ++m) {
    out += format_double(tr.theta[m]);
    out += ',';
    out += format_double(tr.normal_derivative[m]);
    out += ',';
    out += format_double(tr.curvature[m]);
    out += ',';
    out += format_double(tr.arclength_element[m]);
    out += '\n';
  }
  return out;
}

std::string solve_report_json(const Field& f) {
  nlohmann::json j;
  j["n_theta"] = f.n_theta();
  j["n_r"] = f.n_r();
  j["residual"] = f.solve_residual();
  j["iterations"] = f.iterations();
  j["u_max"] = f.u_max();
  j["lambda"] = f.domain().lambda;
  return j.dump(2);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ringflow
