#include "nisac/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nisac {

namespace {

const char* const kContext[] = {"seed", "snr_db", "n_t",     "l_y", "l_z",      "m_y",
                                "m_z",  "t_slots", "zeta",   "b",   "sigma_x2", "system"};
const char* const kMetrics[] = {"crlb_x",       "crlb_gamma",  "crlb_phi",      "crlb_angle",
                                "crlb_isac_db", "mi_avg_bits", "ce_iterations", "objective"};

void append_metrics(std::ostringstream& out, const Metrics& m, double ce_iterations, double objective) {
    for (double v : {m.crlb_x, m.crlb_gamma, m.crlb_phi, m.crlb_angle, m.crlb_isac_db,
                     m.mi_avg_bits, ce_iterations, objective}) {
        out << ',' << format_double(v);
    }
}

}  // namespace

CsvContext context_of(const SystemConfig& cfg, std::uint64_t seed) {
    CsvContext c;
    c.seed = seed;
    c.snr_db = cfg.snr_db;
    c.n_t = cfg.layout.n_t;
    c.l_y = cfg.layout.irs.n_y;
    c.l_z = cfg.layout.irs.n_z;
    c.m_y = cfg.layout.user.n_y;
    c.m_z = cfg.layout.user.n_z;
    c.t_slots = cfg.slots;
    c.zeta = cfg.zeta;
    c.b = cfg.bits;
    c.sigma_x2 = cfg.sigma_x2;
    return c;
}

CsvRow make_row(const CsvContext& context, const ComparisonRow& row) {
    CsvRow r;
    r.context = context;
    r.system = to_string(row.system);
    r.mean = row.stats.mean;
    r.std = row.stats.std;
    r.ce_iterations = row.ce_iterations_mean;
    r.ce_iterations_std = row.ce_iterations_std;
    r.objective = row.objective_mean;
    r.objective_std = row.objective_std;
    return r;
}

std::vector<std::string> csv_header(bool aggregated) {
    std::vector<std::string> h(std::begin(kContext), std::end(kContext));
    h.insert(h.end(), std::begin(kMetrics), std::end(kMetrics));
    if (aggregated) {
        for (const char* m : kMetrics) {
            h.push_back(std::string(m) + "_std");
        }
    }
    return h;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render_csv(const std::vector<CsvRow>& rows, bool aggregated) {
    std::ostringstream out;
    const auto header = csv_header(aggregated);
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const CsvRow& r : rows) {
        const CsvContext& c = r.context;
        out << c.seed << ',' << format_double(c.snr_db) << ',' << c.n_t << ',' << c.l_y << ','
            << c.l_z << ',' << c.m_y << ',' << c.m_z << ',' << c.t_slots << ','
            << format_double(c.zeta) << ',' << c.b << ',' << format_double(c.sigma_x2) << ','
            << r.system;
        append_metrics(out, r.mean, r.ce_iterations, r.objective);
        if (aggregated) {
            append_metrics(out, r.std, r.ce_iterations_std, r.objective_std);
        }
        out << '\n';
    }
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
    }
}

}  // namespace nisac
