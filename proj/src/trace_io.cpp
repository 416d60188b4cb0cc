#include "obscbf/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace obscbf {

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
}

}  // namespace

std::vector<std::string> csv_columns(const SimTrace& trace) {
    std::vector<std::string> cols{"t"};
    for (int i = 1; i <= trace.n; ++i) cols.push_back("x" + std::to_string(i));
    for (int i = 1; i <= trace.n; ++i) cols.push_back("xhat" + std::to_string(i));
    for (int i = 1; i <= trace.m; ++i) cols.push_back("u" + std::to_string(i));
    for (const char* c : {"h_true", "h0", "barrier_eps", "residual", "M"}) cols.emplace_back(c);
    for (int i = 1; i <= trace.terms; ++i) cols.push_back("theta_norm_" + std::to_string(i));
    cols.emplace_back("qp_active");
    cols.emplace_back("qp_feasible");
    return cols;
}

namespace {

// Row of the trace in csv_columns() order.
std::vector<double> row_values(const SimTrace& trace, const SimSample& s) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(1 + 2 * trace.n + trace.m + 5 + trace.terms + 2));
    row.push_back(s.t);
    for (int i = 0; i < trace.n; ++i) row.push_back(s.x(i));
    for (int i = 0; i < trace.n; ++i) row.push_back(s.xhat(i));
    for (int i = 0; i < trace.m; ++i) row.push_back(s.u(i));
    row.insert(row.end(), {s.h_true, s.h0, s.barrier_eps, s.residual, s.M});
    row.insert(row.end(), s.theta_norms.begin(), s.theta_norms.end());
    row.push_back(s.qp_active ? 1.0 : 0.0);
    row.push_back(s.qp_feasible ? 1.0 : 0.0);
    return row;
}

}  // namespace

std::vector<double> column_values(const SimTrace& trace, const std::string& column) {
    const auto cols = csv_columns(trace);
    std::size_t idx = cols.size();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == column) idx = i;
    }
    if (idx == cols.size()) throw std::invalid_argument("unknown trace column \"" + column + "\"");
    std::vector<double> out;
    out.reserve(trace.samples.size());
    for (const auto& s : trace.samples) out.push_back(row_values(trace, s)[idx]);
    return out;
}

std::string emit_csv(const SimTrace& trace) {
    const auto cols = csv_columns(trace);
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    out += '\n';
    const std::size_t flags_from = cols.size() - 2;
    for (const auto& s : trace.samples) {
        const auto row = row_values(trace, s);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (i >= flags_from) {
                out += row[i] != 0.0 ? '1' : '0';
            } else {
                append_number(out, row[i]);
            }
        }
        out += '\n';
    }
    return out;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string field;
        if (header) {
            while (std::getline(fields, field, ',')) table.header.push_back(field);
            header = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(fields, field, ',')) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0') {
                throw std::invalid_argument("parse_csv: bad number \"" + field + "\"");
            }
            row.push_back(v);
        }
        if (row.size() != table.header.size()) throw std::invalid_argument("parse_csv: ragged row");
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace obscbf
