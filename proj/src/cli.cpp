#include "nisac/cli.hpp"

#include "nisac/config.hpp"
#include "nisac/csv.hpp"
#include "nisac/errors.hpp"
#include "nisac/experiments.hpp"
#include "nisac/oracle.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace nisac {

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    int jobs = 0;
    int seeds = 1;
    int sub_irs = 1;
    std::string phases = "auto";
    std::string param;
    std::string grid;
    int fim_instances = 100;
    int ce_runs = 20;
};

SystemConfig config_from(const Options& o) {
    return o.config_path.empty() ? default_system() : load_config(o.config_path);
}

std::uint64_t need_seed(const Options& o) {
    if (!o.seed) {
        throw ConfigError("--seed is required");
    }
    return *o.seed;
}

PhaseMode phase_mode(const Options& o, const SystemConfig& cfg) {
    if (o.phases == "optimized") {
        return PhaseMode::kOptimized;
    }
    if (o.phases == "random") {
        return PhaseMode::kRandom;
    }
    if (o.phases == "fixed") {
        return PhaseMode::kFixed;
    }
    return cfg.phase_indices ? PhaseMode::kFixed : PhaseMode::kOptimized;
}

int jobs_of(const Options& o) { return o.jobs > 0 ? o.jobs : default_jobs(); }

CsvRow block_row(const SystemConfig& cfg, std::uint64_t seed, const BlockOutcome& b) {
    const MetricStats s = summarize(b.no_isac);
    CsvRow r;
    r.context = context_of(cfg, seed);
    r.system = to_string(SystemKind::kNoIsac);
    r.mean = s.mean;
    r.std = s.std;
    r.ce_iterations = b.beamform ? b.beamform->search.iterations : 0;
    r.objective = b.objective;
    return r;
}

void cmd_crlb(const Options& o) {
    const SystemConfig cfg = config_from(o);
    const std::uint64_t seed = need_seed(o);
    const BlockOutcome b = run_block(cfg, o.sub_irs, seed, phase_mode(o, cfg));
    write_file_atomic(o.out_path, render_csv({block_row(cfg, seed, b)}, true));
}

void cmd_optimize(const Options& o) {
    const SystemConfig cfg = config_from(o);
    const std::uint64_t seed = need_seed(o);
    const BlockOutcome b = run_block(cfg, o.sub_irs, seed, PhaseMode::kOptimized);
    const CeResult& ce = b.beamform->search;

    std::ostringstream trace;
    trace << "iteration,best_objective,batch_min,batch_max\n";
    for (std::size_t i = 0; i < ce.objective_trace.size(); ++i) {
        trace << i + 1 << ',' << format_double(ce.objective_trace[i]) << ','
              << format_double(ce.batch_min[i]) << ',' << format_double(ce.batch_max[i]) << '\n';
    }
    std::ostringstream phases;
    phases << "element,index,phase_rad\n";
    const double step = 2.0 * 3.14159265358979323846 / b.phase.levels();
    for (std::size_t l = 0; l < b.phase.indices.size(); ++l) {
        phases << l << ',' << b.phase.indices[l] << ','
               << format_double(step * b.phase.indices[l]) << '\n';
    }
    write_file_atomic(sidecar_path(o.out_path, "_trace"), trace.str());
    write_file_atomic(sidecar_path(o.out_path, "_phases"), phases.str());
    write_file_atomic(o.out_path, render_csv({block_row(cfg, seed, b)}, true));
}

void cmd_compare(const Options& o) {
    const SystemConfig cfg = config_from(o);
    const std::uint64_t seed = need_seed(o);
    const auto rows = compare_systems(cfg, seed, o.seeds, jobs_of(o), phase_mode(o, cfg));
    std::vector<CsvRow> out;
    for (const ComparisonRow& r : rows) {
        out.push_back(make_row(context_of(cfg, seed), r));
    }
    write_file_atomic(o.out_path, render_csv(out, true));
}

void cmd_sweep(const Options& o) {
    const SystemConfig cfg = config_from(o);
    SweepSpec spec;
    spec.parameter = parse_sweep_parameter(o.param);
    spec.grid = parse_grid(o.grid);
    spec.monte_carlo_draws = cfg.monte_carlo_draws;
    spec.seed = need_seed(o);
    spec.seeds = o.seeds;
    std::vector<CsvRow> out;
    for (const SweepPoint& p : run_sweep(cfg, spec, jobs_of(o))) {
        for (const ComparisonRow& r : p.rows) {
            out.push_back(make_row(context_of(p.config, spec.seed), r));
        }
    }
    write_file_atomic(o.out_path, render_csv(out, true));
}

bool cmd_verify(const Options& o, std::ostream& out) {
    const SystemConfig cfg = config_from(o);
    oracle::SuiteOptions suite;
    suite.fim_instances = o.fim_instances;
    suite.ce_runs = o.ce_runs;
    bool ok = true;
    for (const oracle::CheckResult& c : oracle::run_suite(cfg, need_seed(o), suite)) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << format_double(c.measured)
            << " threshold=" << format_double(c.threshold);
        if (!c.detail.empty()) {
            out << " (" << c.detail << ")";
        }
        out << '\n';
        ok = ok && c.passed;
    }
    return ok;
}

}  // namespace

int default_jobs() {
    if (const char* env = std::getenv("NISAC_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<int>(v);
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string sidecar_path(const std::string& out_path, const std::string& suffix) {
    std::filesystem::path p(out_path);
    const std::string ext = p.extension().string();
    p.replace_extension();
    p += suffix;
    p += ext.empty() ? ".csv" : ext;
    return p.string();
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("--grid: '" + item + "' is not a number");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw ConfigError("--grid: '" + item + "' is not a number");
        }
        grid.push_back(v);
    }
    if (grid.empty()) {
        throw ConfigError("--grid: empty grid");
    }
    return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"IRS-aided NO-ISAC simulator"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool writes) {
        sub->add_option("--config", o.config_path, "JSON configuration (defaults when omitted)");
        sub->add_option("--seed", o.seed, "experiment seed")->required();
        if (writes) {
            sub->add_option("--out", o.out_path, "output CSV")->required();
        }
    };
    CLI::App* crlb = app.add_subcommand("crlb", "CRLBs of one optimized time block");
    common(crlb, true);
    crlb->add_option("--sub-irs", o.sub_irs, "sub-IRS index")->check(CLI::Range(1, 2));
    crlb->add_option("--phases", o.phases, "auto, optimized, random or fixed")
        ->check(CLI::IsMember({"auto", "optimized", "random", "fixed"}));

    CLI::App* optimize = app.add_subcommand("optimize", "cross-entropy phase design with trace");
    common(optimize, true);
    optimize->add_option("--sub-irs", o.sub_irs, "sub-IRS index")->check(CLI::Range(1, 2));

    CLI::App* compare = app.add_subcommand("compare", "NO-ISAC vs TD-ISAC vs localization-only");
    common(compare, true);
    compare->add_option("--seeds", o.seeds, "number of consecutive seeds")->check(CLI::PositiveNumber);
    compare->add_option("--phases", o.phases, "auto, optimized, random or fixed")
        ->check(CLI::IsMember({"auto", "optimized", "random", "fixed"}));

    CLI::App* sweep = app.add_subcommand("sweep", "comparison over a parameter grid");
    common(sweep, true);
    sweep->add_option("--param", o.param, "zeta, T, L, snr or sigma_x2")->required();
    sweep->add_option("--grid", o.grid, "comma-separated values")->required();
    sweep->add_option("--seeds", o.seeds, "seeds per grid point")->check(CLI::PositiveNumber);

    CLI::App* verify = app.add_subcommand("verify", "oracle cross-checks");
    common(verify, false);
    verify->add_option("--fim-instances", o.fim_instances, "random FIM instances")
        ->check(CLI::PositiveNumber);
    verify->add_option("--ce-runs", o.ce_runs, "cross-entropy runs against enumeration")
        ->check(CLI::PositiveNumber);

    for (CLI::App* sub : {compare, sweep}) {
        sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (crlb->parsed()) {
            cmd_crlb(o);
        } else if (optimize->parsed()) {
            cmd_optimize(o);
        } else if (compare->parsed()) {
            cmd_compare(o);
        } else if (sweep->parsed()) {
            cmd_sweep(o);
        } else if (verify->parsed()) {
            if (!cmd_verify(o, out)) {
                err << "verify: one or more checks failed\n";
                return kExitVerify;
            }
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SingularFimError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitSingular;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace nisac
