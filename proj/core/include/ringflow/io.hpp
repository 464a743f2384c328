#pragma once

#include <string>
#include <vector>

#include "ringflow/solver.hpp"

namespace ringflow {

/// CSV table of the model family: one row per core radius, columns
/// R, r_i, u_max, c_inner, c_outer, tau_i, tau_o. The degenerate fields of
/// the R = 0 row (c_inner, tau_i) are left empty. Doubles are written in
/// shortest round-trip form, comma separated, LF line endings.
std::string model_table_csv(const std::vector<double>& R_grid);

/// Parse a CSV produced by this module back into cells (no quoting involved).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Field export: theta, s, x, y, u rows.
std::string field_csv(const Field& f);

/// Boundary trace export: theta, du/dnu, kappa, arclength element.
std::string trace_csv(const BoundaryTrace& tr);

/// JSON solve report: grid sizes, residual norms, u_max.
std::string solve_report_json(const Field& f);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ringflow
