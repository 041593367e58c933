#include "nisac/experiments.hpp"

#include "nisac/errors.hpp"
#include "nisac/parallel.hpp"
#include "nisac/random.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <tuple>
#include <utility>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nisac {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::array<double, 2> random_gain_phases(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double b2i = angle(rng);
    return {b2i, angle(rng)};
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
    if (v.empty()) {
        return {kNaN, kNaN};
    }
    double sum = 0.0;
    for (const double x : v) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(v.size());
    if (v.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (const double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

Metrics metrics_of(const CrlbReport& r) {
    return {r.crlb_x, r.crlb_gamma, r.crlb_phi, r.crlb_angle, r.crlb_isac_db, r.mi_avg};
}

}  // namespace

BlockProblem make_block_problem(const SystemConfig& cfg, int sub_irs_index, std::uint64_t seed) {
    if (sub_irs_index != 1 && sub_irs_index != 2) {
        throw ConfigError("sub-IRS index must be 1 or 2, got " + std::to_string(sub_irs_index));
    }
    const BlockGeometry& geom = cfg.blocks[static_cast<std::size_t>(sub_irs_index - 1)];

    // Gain phases depend on the seed only, so both sub-IRS blocks and all
    // compared systems see the same draw.
    std::mt19937_64 rng = make_stream(seed, Stream::kGainPhase);
    const auto phases = random_gain_phases(rng);

    BlockProblem p;
    p.channels =
        build_channels(geom, cfg.path_loss, cfg.layout, phases[0], phases[1]);
    p.derivs = derivative_channels(p.channels);
    p.w = active_beam(geom.bs_departure_elevation, cfg.layout.n_t, cfg.p_t);
    p.a_b = ula_response(geom.bs_departure_elevation, cfg.layout.n_t);
    const double noise = noise_power_for_snr(cfg.snr_db, std::abs(p.channels.gain_b2i),
                                             std::abs(p.channels.gain_i2u));
    p.signal = unit_energy_signal(cfg.sigma_x2, cfg.slots, noise);
    p.zeta = cfg.zeta;
    p.td_split = cfg.td_split;
    return p;
}

std::vector<std::vector<cd>> design_symbols(const SystemConfig& cfg, std::uint64_t seed) {
    const SignalModel s = unit_energy_signal(cfg.sigma_x2, cfg.slots, 1.0);
    std::vector<std::vector<cd>> out;
    out.reserve(static_cast<std::size_t>(cfg.design_draws));
    for (int d = 0; d < cfg.design_draws; ++d) {
        std::mt19937_64 rng = make_stream(seed, Stream::kDesignSymbols, static_cast<std::uint64_t>(d));
        out.push_back(draw_symbols(rng, cfg.slots, s.mean_x, s.var_x));
    }
    return out;
}

PhaseObjective design_objective(const BlockProblem& problem,
                                std::vector<std::vector<cd>> symbols) {
    if (symbols.empty()) {
        throw std::invalid_argument("design_objective: need at least one symbol draw");
    }
    const Eigen::VectorXcd incident = problem.channels.h_b2i * problem.w;
    return [incident, h = problem.channels.h_i2u, dg = problem.derivs.d_gamma,
            dp = problem.derivs.d_phi, w = problem.w, a_b = problem.a_b,
            noise = problem.signal.noise_var, zeta = problem.zeta,
            symbols = std::move(symbols)](const PhaseConfig& cand) {
        const Eigen::VectorXcd reflected = phase_beam(cand).cwiseProduct(incident);
        const ReflectedBeams beams{h * reflected, dg * reflected, dp * reflected};
        double sum = 0.0;
        for (const auto& x : symbols) {
            sum += v_xi(assemble_fim(compute_betas(beams, x), noise), w, zeta, a_b);
        }
        return sum / static_cast<double>(symbols.size());
    };
}

std::string to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::kNoIsac: return "no_isac";
        case SystemKind::kTdIsac: return "td_isac";
        case SystemKind::kLocOnly: return "loc_only";
    }
    return "unknown";
}

MetricStats summarize(const std::vector<Metrics>& samples) {
    MetricStats s;
    s.samples = static_cast<int>(samples.size());
    if (samples.empty()) {
        s.mean = s.std = Metrics{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
        return s;
    }
    auto field_stats = [&](double Metrics::*field, double& mean, double& sd) {
        std::vector<double> column;
        column.reserve(samples.size());
        for (const Metrics& m : samples) {
            column.push_back(m.*field);
        }
        std::tie(mean, sd) = mean_std(column);
    };
    field_stats(&Metrics::crlb_x, s.mean.crlb_x, s.std.crlb_x);
    field_stats(&Metrics::crlb_gamma, s.mean.crlb_gamma, s.std.crlb_gamma);
    field_stats(&Metrics::crlb_phi, s.mean.crlb_phi, s.std.crlb_phi);
    field_stats(&Metrics::crlb_angle, s.mean.crlb_angle, s.std.crlb_angle);
    field_stats(&Metrics::crlb_isac_db, s.mean.crlb_isac_db, s.std.crlb_isac_db);
    field_stats(&Metrics::mi_avg_bits, s.mean.mi_avg_bits, s.std.mi_avg_bits);
    return s;
}

namespace {

void evaluate_systems(const SystemConfig& cfg, const BlockProblem& prob, std::uint64_t seed,
                      BlockOutcome& out) {
    const ReflectedBeams beams =
        reflect(prob.channels, prob.derivs, phase_beam(out.phase), prob.w);
    const int T = cfg.slots;
    const int draws = cfg.monte_carlo_draws;

    CrlbReport mean;
    mean.crlb_per_symbol.assign(static_cast<std::size_t>(T), 0.0);
    mean.mi_per_slot.assign(static_cast<std::size_t>(T), 0.0);
    out.no_isac.reserve(static_cast<std::size_t>(draws));
    for (int d = 0; d < draws; ++d) {
        std::mt19937_64 rng = make_stream(seed, Stream::kEvalSymbols, static_cast<std::uint64_t>(d));
        const auto x = draw_symbols(rng, T, prob.signal.mean_x, prob.signal.var_x);
        CrlbReport r = invert_crlbs(assemble_fim(compute_betas(beams, x), prob.signal.noise_var),
                                    prob.zeta);
        attach_mutual_information(r, prob.signal.var_x);
        out.no_isac.push_back(metrics_of(r));
        for (int t = 0; t < T; ++t) {
            mean.crlb_per_symbol[static_cast<std::size_t>(t)] += r.crlb_per_symbol[static_cast<std::size_t>(t)] / draws;
            mean.mi_per_slot[static_cast<std::size_t>(t)] += r.mi_per_slot[static_cast<std::size_t>(t)] / draws;
        }
        mean.mi_below_prior = mean.mi_below_prior || r.mi_below_prior;
    }
    const MetricStats s = summarize(out.no_isac);
    mean.crlb_x = s.mean.crlb_x;
    mean.crlb_gamma = s.mean.crlb_gamma;
    mean.crlb_phi = s.mean.crlb_phi;
    mean.crlb_angle = s.mean.crlb_angle;
    mean.crlb_isac_db = s.mean.crlb_isac_db;
    mean.mi_avg = s.mean.mi_avg_bits;
    out.mean_report = std::move(mean);

    // Known unit pilots in every slot; identical for every draw.
    const std::vector<cd> pilots(static_cast<std::size_t>(T), cd(1.0, 0.0));
    const AngleBounds loc = angle_crlbs(localization_fim(beams, pilots, prob.signal.noise_var));
    out.loc_only.assign(static_cast<std::size_t>(draws),
                        Metrics{kNaN, loc.crlb_gamma, loc.crlb_phi, loc.crlb_angle, kNaN, kNaN});

    const int pilot_slots = static_cast<int>(std::floor(T * prob.td_split + 1e-9));
    if (prob.td_split > 0.0 && pilot_slots >= 1) {
        const TdIsacMetrics td = td_isac_metrics(beams, prob.signal, prob.td_split);
        const double isac_db =
            prob.zeta * std::log10(td.crlb_x) + (1.0 - prob.zeta) * std::log10(td.crlb_angle);
        out.td_isac.assign(static_cast<std::size_t>(draws),
                           Metrics{td.crlb_x, td.crlb_gamma, td.crlb_phi, td.crlb_angle, isac_db,
                                   td.mi_avg});
    }
}

}  // namespace

BlockOutcome run_block(const SystemConfig& cfg, int sub_irs_index, std::uint64_t seed,
                       PhaseMode mode) {
    validate(cfg);
    const BlockProblem prob = make_block_problem(cfg, sub_irs_index, seed);
    const PhaseObjective objective = design_objective(prob, design_symbols(cfg, seed));
    const int L = cfg.layout.irs.size();

    BlockOutcome out;
    switch (mode) {
        case PhaseMode::kOptimized: {
            CeResult search = ce_optimize(objective, L, cfg.bits, resolve_ce(cfg, seed));
            out.phase = search.best_phase;
            out.objective = search.best_objective;
            out.beamform = BeamformResult{std::move(search), prob.w};
            break;
        }
        case PhaseMode::kRandom: {
            std::mt19937_64 rng = make_stream(seed, Stream::kRandomPhase);
            std::uniform_int_distribution<int> level(0, (1 << cfg.bits) - 1);
            out.phase.bits = cfg.bits;
            out.phase.indices.resize(static_cast<std::size_t>(L));
            for (int& s : out.phase.indices) {
                s = level(rng);
            }
            out.objective = objective(out.phase);
            break;
        }
        case PhaseMode::kFixed: {
            if (!cfg.phase_indices) {
                throw ConfigError("fixed phase mode needs phase_indices in the config");
            }
            out.phase = PhaseConfig{*cfg.phase_indices, cfg.bits};
            out.objective = objective(out.phase);
            break;
        }
    }
    evaluate_systems(cfg, prob, seed, out);
    return out;
}

namespace {

std::vector<ComparisonRow> pool_rows(const std::vector<BlockOutcome>& outcomes) {
    std::vector<Metrics> no_isac, td, loc;
    std::vector<double> iterations, objectives;
    for (const BlockOutcome& o : outcomes) {
        no_isac.insert(no_isac.end(), o.no_isac.begin(), o.no_isac.end());
        td.insert(td.end(), o.td_isac.begin(), o.td_isac.end());
        loc.insert(loc.end(), o.loc_only.begin(), o.loc_only.end());
        iterations.push_back(o.beamform ? static_cast<double>(o.beamform->search.iterations) : 0.0);
        objectives.push_back(o.objective);
    }
    const auto [iter_mean, iter_std] = mean_std(iterations);
    const auto [obj_mean, obj_std] = mean_std(objectives);

    auto make_row = [&](SystemKind kind, const std::vector<Metrics>& samples) {
        ComparisonRow row;
        row.system = kind;
        row.stats = summarize(samples);
        row.ce_iterations_mean = iter_mean;
        row.ce_iterations_std = iter_std;
        row.objective_mean = obj_mean;
        row.objective_std = obj_std;
        return row;
    };
    std::vector<ComparisonRow> rows;
    rows.push_back(make_row(SystemKind::kNoIsac, no_isac));
    if (!td.empty()) {
        rows.push_back(make_row(SystemKind::kTdIsac, td));
    }
    rows.push_back(make_row(SystemKind::kLocOnly, loc));
    return rows;
}

}  // namespace

std::vector<ComparisonRow> compare_systems(const SystemConfig& cfg, std::uint64_t base_seed,
                                           int n_seeds, int jobs, PhaseMode mode) {
    if (n_seeds < 1) {
        throw ConfigError("compare: need at least one seed");
    }
    validate(cfg);
    const auto outcomes = parallel_map(static_cast<std::size_t>(n_seeds), jobs, [&](std::size_t k) {
        return run_block(cfg, 1, base_seed + k, mode);
    });
    return pool_rows(outcomes);
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "zeta") return SweepParameter::kZeta;
    if (name == "T" || name == "t" || name == "t_slots") return SweepParameter::kSlots;
    if (name == "L" || name == "l") return SweepParameter::kIrsElements;
    if (name == "snr" || name == "snr_db") return SweepParameter::kSnrDb;
    if (name == "sigma_x2") return SweepParameter::kSigmaX2;
    throw ConfigError("unknown sweep parameter '" + name + "' (expected zeta, T, L, snr, sigma_x2)");
}

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::kZeta: return "zeta";
        case SweepParameter::kSlots: return "T";
        case SweepParameter::kIrsElements: return "L";
        case SweepParameter::kSnrDb: return "snr";
        case SweepParameter::kSigmaX2: return "sigma_x2";
    }
    return "unknown";
}

void validate(const SweepSpec& spec) {
    if (spec.grid.empty()) {
        throw ConfigError("sweep grid is empty");
    }
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
        if (!(spec.grid[i] > spec.grid[i - 1])) {
            throw ConfigError("sweep grid must be strictly increasing");
        }
    }
    if (spec.monte_carlo_draws < 1 || spec.seeds < 1) {
        throw ConfigError("sweep needs at least one draw and one seed");
    }
}

namespace {

int checked_integer(double value, const std::string& name) {
    const double r = std::round(value);
    if (std::abs(value - r) > 1e-9 || r < 1.0) {
        throw ConfigError(name + " sweep values must be positive integers");
    }
    return static_cast<int>(r);
}

}  // namespace

SystemConfig with_parameter(const SystemConfig& cfg, SweepParameter p, double value) {
    SystemConfig out = cfg;
    switch (p) {
        case SweepParameter::kZeta: out.zeta = value; break;
        case SweepParameter::kSlots: out.slots = checked_integer(value, "T"); break;
        case SweepParameter::kIrsElements: {
            const int L = checked_integer(value, "L");
            int ny = static_cast<int>(std::sqrt(static_cast<double>(L)));
            while (L % ny != 0) {
                --ny;
            }
            out.layout.irs = UraShape{ny, L / ny};
            out.phase_indices.reset();
            break;
        }
        case SweepParameter::kSnrDb: out.snr_db = value; break;
        case SweepParameter::kSigmaX2: out.sigma_x2 = value; break;
    }
    return out;
}

std::vector<SweepPoint> run_sweep(const SystemConfig& cfg, const SweepSpec& spec, int jobs) {
    validate(spec);
    SystemConfig base = cfg;
    base.monte_carlo_draws = spec.monte_carlo_draws;

    std::vector<SweepPoint> points;
    for (const double v : spec.grid) {
        SweepPoint pt;
        pt.value = v;
        pt.config = with_parameter(base, spec.parameter, v);
        validate(pt.config);
        points.push_back(std::move(pt));
    }
    const std::size_t n_seeds = static_cast<std::size_t>(spec.seeds);
    const auto outcomes =
        parallel_map(points.size() * n_seeds, jobs, [&](std::size_t task) {
            const SweepPoint& pt = points[task / n_seeds];
            return run_block(pt.config, 1, spec.seed + task % n_seeds);
        });
    for (std::size_t g = 0; g < points.size(); ++g) {
        const std::vector<BlockOutcome> slice(outcomes.begin() + static_cast<std::ptrdiff_t>(g * n_seeds),
                                              outcomes.begin() + static_cast<std::ptrdiff_t>((g + 1) * n_seeds));
        points[g].rows = pool_rows(slice);
    }
    return points;
}

std::vector<TradeoffPoint> tradeoff_curve(const SystemConfig& cfg,
                                          const std::vector<double>& zeta_grid,
                                          std::uint64_t base_seed, int n_seeds, int jobs) {
    for (const double z : zeta_grid) {
        if (!(z > 0.0 && z < 1.0)) {
            throw ConfigError("trade-off zeta values must lie in (0, 1)");
        }
    }
    SweepSpec spec;
    spec.parameter = SweepParameter::kZeta;
    spec.grid = zeta_grid;
    spec.monte_carlo_draws = cfg.monte_carlo_draws;
    spec.seed = base_seed;
    spec.seeds = n_seeds;
    std::vector<TradeoffPoint> out;
    for (const SweepPoint& pt : run_sweep(cfg, spec, jobs)) {
        const MetricStats& s = pt.rows.front().stats;
        out.push_back({pt.value, s.mean.mi_avg_bits, s.std.mi_avg_bits, s.mean.crlb_angle,
                       s.std.crlb_angle, s.mean.crlb_x});
    }
    return out;
}

Position arrival_direction(const LinkGeometry& aoa) {
    const double c = std::cos(aoa.elevation);
    return {c * std::cos(aoa.azimuth), c * std::sin(aoa.azimuth), std::sin(aoa.elevation)};
}

Position triangulate(const LinkGeometry& aoa_1, const Position& irs_1, const LinkGeometry& aoa_2,
                     const Position& irs_2) {
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    std::array<Eigen::Vector3d, 2> dirs;
    const std::array<std::pair<const LinkGeometry*, const Position*>, 2> rays{
        std::pair{&aoa_1, &irs_1}, std::pair{&aoa_2, &irs_2}};
    for (std::size_t i = 0; i < 2; ++i) {
        const Position d = arrival_direction(*rays[i].first);
        // Ray leaves the IRS towards the user, opposite to the arrival direction.
        const Eigen::Vector3d u = -Eigen::Vector3d(d.x, d.y, d.z);
        const Eigen::Vector3d origin(rays[i].second->x, rays[i].second->y, rays[i].second->z);
        const Eigen::Matrix3d proj = Eigen::Matrix3d::Identity() - u * u.transpose();
        A += proj;
        b += proj * origin;
        dirs[i] = u;
    }
    if (dirs[0].cross(dirs[1]).norm() < 1e-9) {
        throw std::domain_error("triangulate: rays are parallel");
    }
    const Eigen::Vector3d p = A.ldlt().solve(b);
    return {p(0), p(1), p(2)};
}

PositioningOutcome locate_user(const SystemConfig& cfg, std::uint64_t seed, int jobs) {
    if (!cfg.placement) {
        throw ConfigError("locating the user needs node positions in the config");
    }
    const Placement& pl = *cfg.placement;
    PositioningOutcome out;
    const auto blocks = parallel_map(2, jobs, [&](std::size_t i) {
        return run_block(cfg, static_cast<int>(i) + 1, seed);
    });
    out.blocks = {blocks[0], blocks[1]};
    out.truth = pl.user;

    std::mt19937_64 rng = make_stream(seed, Stream::kAoaNoise);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::array<LinkGeometry, 2> estimates;
    for (std::size_t i = 0; i < 2; ++i) {
        const LinkGeometry& aoa = cfg.blocks[i].irs_to_user;
        const CrlbReport& r = out.blocks[i].mean_report;
        const double el = aoa.elevation + std::sqrt(r.crlb_gamma) * normal(rng);
        const double az = aoa.azimuth + std::sqrt(r.crlb_phi) * normal(rng);
        estimates[i] = make_link(aoa.distance, el, az);
    }
    out.estimate = triangulate(estimates[0], pl.sub_irs[0], estimates[1], pl.sub_irs[1]);
    const double dx = out.estimate.x - out.truth.x;
    const double dy = out.estimate.y - out.truth.y;
    const double dz = out.estimate.z - out.truth.z;
    out.error = std::sqrt(dx * dx + dy * dy + dz * dz);
    return out;
}

}  // namespace nisac
