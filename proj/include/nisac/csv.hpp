#pragma once

// Result tables: fixed run-context columns, the metric columns and, for
// aggregated tables, a _std column per metric.

#include "nisac/experiments.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nisac {

struct CsvContext {
    std::uint64_t seed = 0;
    double snr_db = 0.0;
    int n_t = 0;
    int l_y = 0;
    int l_z = 0;
    int m_y = 0;
    int m_z = 0;
    int t_slots = 0;
    double zeta = 0.0;
    int b = 0;
    double sigma_x2 = 0.0;
};

CsvContext context_of(const SystemConfig& cfg, std::uint64_t seed);

struct CsvRow {
    CsvContext context;
    std::string system;
    Metrics mean;
    double ce_iterations = 0.0;
    double objective = 0.0;
    Metrics std;
    double ce_iterations_std = 0.0;
    double objective_std = 0.0;
};

CsvRow make_row(const CsvContext& context, const ComparisonRow& row);

std::vector<std::string> csv_header(bool aggregated);

// 17 significant digits; non-finite values as nan, inf, -inf.
std::string format_double(double v);

std::string render_csv(const std::vector<CsvRow>& rows, bool aggregated);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace nisac
