#pragma once

// Scenario drivers: one time block with optimized beamforming, the
// NO-ISAC / TD-ISAC / localization-only comparison, parameter sweeps,
// trade-off curves and the two-block user positioning loop.

#include "nisac/beamform.hpp"
#include "nisac/fim.hpp"
#include "nisac/scenario.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nisac {

// Everything fixed for one (sub-IRS, seed) pair before the phases are chosen.
struct BlockProblem {
    ChannelSet channels;
    DerivativeChannels derivs;
    Eigen::VectorXcd w;    // active beam
    Eigen::VectorXcd a_b;  // BS steering towards the IRS
    SignalModel signal;
    double zeta = 0.5;
    double td_split = 0.2;
};

BlockProblem make_block_problem(const SystemConfig& cfg, int sub_irs_index, std::uint64_t seed);

// V_xi averaged over the given symbol realizations.
PhaseObjective design_objective(const BlockProblem& problem,
                                std::vector<std::vector<cd>> design_symbols);

std::vector<std::vector<cd>> design_symbols(const SystemConfig& cfg, std::uint64_t seed);

enum class SystemKind { kNoIsac, kTdIsac, kLocOnly };

std::string to_string(SystemKind kind);

struct Metrics {
    double crlb_x = 0.0;
    double crlb_gamma = 0.0;
    double crlb_phi = 0.0;
    double crlb_angle = 0.0;
    double crlb_isac_db = 0.0;
    double mi_avg_bits = 0.0;
};

struct MetricStats {
    Metrics mean;
    Metrics std;  // sample standard deviation, 0 for a single sample
    int samples = 0;
};

MetricStats summarize(const std::vector<Metrics>& samples);

enum class PhaseMode { kOptimized, kRandom, kFixed };

struct BlockOutcome {
    PhaseConfig phase;
    std::optional<BeamformResult> beamform;  // present for kOptimized
    double objective = 0.0;                  // design objective at `phase`
    CrlbReport mean_report;                  // NO-ISAC report averaged over draws
    std::vector<Metrics> no_isac;            // one entry per Monte-Carlo draw
    std::vector<Metrics> loc_only;
    std::vector<Metrics> td_isac;            // empty when T*split < 1
};

// Builds the channels of the indexed sub-IRS (1 or 2), picks the phases
// (cross-entropy by default) and evaluates the three systems over the
// Monte-Carlo symbol draws.
BlockOutcome run_block(const SystemConfig& cfg, int sub_irs_index, std::uint64_t seed,
                       PhaseMode mode = PhaseMode::kOptimized);

struct ComparisonRow {
    SystemKind system = SystemKind::kNoIsac;
    MetricStats stats;
    double ce_iterations_mean = 0.0;
    double ce_iterations_std = 0.0;
    double objective_mean = 0.0;
    double objective_std = 0.0;
};

// Seeds base_seed .. base_seed+n_seeds-1, all on sub-IRS 1. Rows pool every
// (seed, draw) sample. The TD row is omitted when T*split < 1.
std::vector<ComparisonRow> compare_systems(const SystemConfig& cfg, std::uint64_t base_seed,
                                           int n_seeds, int jobs = 1,
                                           PhaseMode mode = PhaseMode::kOptimized);

enum class SweepParameter { kZeta, kSlots, kIrsElements, kSnrDb, kSigmaX2 };

SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter p);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::kZeta;
    std::vector<double> grid;
    int monte_carlo_draws = 100;
    std::uint64_t seed = 0;
    int seeds = 1;
};

void validate(const SweepSpec& spec);

// Config with one parameter replaced. L is factored into the most square
// n_y x n_z grid with n_y <= n_z.
SystemConfig with_parameter(const SystemConfig& cfg, SweepParameter p, double value);

struct SweepPoint {
    double value = 0.0;
    SystemConfig config;
    std::vector<ComparisonRow> rows;
};

std::vector<SweepPoint> run_sweep(const SystemConfig& cfg, const SweepSpec& spec, int jobs = 1);

struct TradeoffPoint {
    double zeta = 0.0;
    double mi_mean = 0.0;
    double mi_std = 0.0;
    double crlb_angle_mean = 0.0;
    double crlb_angle_std = 0.0;
    double crlb_x_mean = 0.0;
};

std::vector<TradeoffPoint> tradeoff_curve(const SystemConfig& cfg,
                                          const std::vector<double>& zeta_grid,
                                          std::uint64_t base_seed, int n_seeds, int jobs = 1);

// Unit vector from the user towards the IRS for a user-side AoA pair.
Position arrival_direction(const LinkGeometry& aoa);

// Least-squares intersection of the two rays leaving each sub-IRS towards the
// user. Throws std::domain_error for (near-)parallel rays.
Position triangulate(const LinkGeometry& aoa_1, const Position& irs_1, const LinkGeometry& aoa_2,
                     const Position& irs_2);

struct PositioningOutcome {
    std::array<BlockOutcome, 2> blocks;
    Position truth;
    Position estimate;  // from AoAs perturbed by Gaussian errors at the CRLB
    double error = 0.0;
};

// One coherence block: both sub-IRS time blocks, then triangulation from the
// AoA pairs. Requires a placement in the config.
PositioningOutcome locate_user(const SystemConfig& cfg, std::uint64_t seed, int jobs = 1);

}  // namespace nisac
