#pragma once

#include <string>
#include <vector>

#include "obscbf/simloop.hpp"

namespace obscbf {

/// t, x1..xn, xhat1..xhatn, u1..um, h_true, h0, barrier_eps, residual, M,
/// theta_norm_1..theta_norm_N, qp_active, qp_feasible
std::vector<std::string> csv_columns(const SimTrace& trace);

/// One column of the trace by CSV column name. Throws std::invalid_argument if unknown.
std::vector<double> column_values(const SimTrace& trace, const std::string& column);

/// Header plus one row per sample, 12 significant digits, booleans as 0/1, LF endings.
std::string emit_csv(const SimTrace& trace);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable parse_csv(const std::string& text);

}  // namespace obscbf
