#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nisac/arrays.hpp"
#include "nisac/cli.hpp"
#include "nisac/config.hpp"
#include "nisac/csv.hpp"
#include "nisac/errors.hpp"
#include "nisac/experiments.hpp"
#include "nisac/oracle.hpp"

#include <sstream>

namespace py = pybind11;
using namespace nisac;

namespace {

py::dict metrics_dict(const Metrics& m, const std::string& suffix = {}) {
    py::dict d;
    d[("crlb_x" + suffix).c_str()] = m.crlb_x;
    d[("crlb_gamma" + suffix).c_str()] = m.crlb_gamma;
    d[("crlb_phi" + suffix).c_str()] = m.crlb_phi;
    d[("crlb_angle" + suffix).c_str()] = m.crlb_angle;
    d[("crlb_isac_db" + suffix).c_str()] = m.crlb_isac_db;
    d[("mi_avg_bits" + suffix).c_str()] = m.mi_avg_bits;
    return d;
}

py::dict row_dict(const ComparisonRow& r) {
    py::dict d = metrics_dict(r.stats.mean);
    for (auto item : metrics_dict(r.stats.std, "_std")) {
        d[item.first] = item.second;
    }
    d["system"] = to_string(r.system);
    d["samples"] = r.stats.samples;
    d["ce_iterations"] = r.ce_iterations_mean;
    d["ce_iterations_std"] = r.ce_iterations_std;
    d["objective"] = r.objective_mean;
    d["objective_std"] = r.objective_std;
    return d;
}

PhaseMode parse_mode(const std::string& s) {
    if (s == "optimized") return PhaseMode::kOptimized;
    if (s == "random") return PhaseMode::kRandom;
    if (s == "fixed") return PhaseMode::kFixed;
    throw ConfigError("phases must be optimized, random or fixed");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "IRS-aided NO-ISAC Cramer-Rao simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SingularFimError>(m, "SingularFimError", PyExc_ArithmeticError);

    m.def("validate_config", [](const std::string& json) { parse_config(json); },
          py::arg("config_json") = "{}");

    m.def("ura_response", [](double el, double az, int n_y, int n_z) {
        return ura_response(el, az, UraShape{n_y, n_z});
    }, py::arg("elevation"), py::arg("azimuth"), py::arg("n_y"), py::arg("n_z"));

    m.def("run_block", [](const std::string& json, int sub_irs, std::uint64_t seed, const std::string& phases) {
        const SystemConfig cfg = parse_config(json);
        BlockOutcome b;
        {
            py::gil_scoped_release release;
            b = run_block(cfg, sub_irs, seed, parse_mode(phases));
        }
        const MetricStats s = summarize(b.no_isac);
        py::dict d = metrics_dict(s.mean);
        for (auto item : metrics_dict(s.std, "_std")) d[item.first] = item.second;
        d["phase_indices"] = b.phase.indices;
        d["objective"] = b.objective;
        d["crlb_per_symbol"] = b.mean_report.crlb_per_symbol;
        if (b.beamform) {
            d["ce_iterations"] = b.beamform->search.iterations;
            d["objective_trace"] = b.beamform->search.objective_trace;
        }
        return d;
    }, py::arg("config_json") = "{}", py::arg("sub_irs") = 1, py::arg("seed") = 0,
       py::arg("phases") = "optimized");

    m.def("compare", [](const std::string& json, std::uint64_t seed, int seeds, int jobs) {
        const SystemConfig cfg = parse_config(json);
        std::vector<ComparisonRow> rows;
        {
            py::gil_scoped_release release;
            rows = compare_systems(cfg, seed, seeds, jobs);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_dict(r));
        return out;
    }, py::arg("config_json") = "{}", py::arg("seed") = 0, py::arg("seeds") = 1, py::arg("jobs") = 1);

    m.def("sweep", [](const std::string& json, const std::string& param, std::vector<double> grid,
                      std::uint64_t seed, int seeds, int jobs) {
        const SystemConfig cfg = parse_config(json);
        SweepSpec spec;
        spec.parameter = parse_sweep_parameter(param);
        spec.grid = std::move(grid);
        spec.monte_carlo_draws = cfg.monte_carlo_draws;
        spec.seed = seed;
        spec.seeds = seeds;
        std::vector<SweepPoint> points;
        {
            py::gil_scoped_release release;
            points = run_sweep(cfg, spec, jobs);
        }
        py::list out;
        for (const auto& p : points) {
            for (const auto& r : p.rows) {
                py::dict d = row_dict(r);
                d["value"] = p.value;
                out.append(d);
            }
        }
        return out;
    }, py::arg("config_json"), py::arg("param"), py::arg("grid"), py::arg("seed") = 0, py::arg("seeds") = 1,
       py::arg("jobs") = 1);

    m.def("verify", [](const std::string& json, std::uint64_t seed, int fim_instances, int ce_runs) {
        const SystemConfig cfg = parse_config(json);
        oracle::SuiteOptions opt;
        opt.fim_instances = fim_instances;
        opt.ce_runs = ce_runs;
        std::vector<oracle::CheckResult> checks;
        {
            py::gil_scoped_release release;
            checks = oracle::run_suite(cfg, seed, opt);
        }
        py::list out;
        for (const auto& c : checks) {
            py::dict d;
            d["name"] = c.name;
            d["passed"] = c.passed;
            d["measured"] = c.measured;
            d["threshold"] = c.threshold;
            d["detail"] = c.detail;
            out.append(d);
        }
        return out;
    }, py::arg("config_json") = "{}", py::arg("seed") = 0, py::arg("fim_instances") = 100, py::arg("ce_runs") = 20);

    m.def("csv_header", &csv_header, py::arg("aggregated") = true);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs one command line; returns (exit code, stdout text, stderr text).");
}
