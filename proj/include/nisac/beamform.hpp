#pragma once

#include "nisac/channel.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace nisac {

// Matched BS beam sqrt(P_t / N_t) a_B(elevation).
Eigen::VectorXcd active_beam(double elevation, int n_t, double p_t);

// Column l holds the categorical distribution of element l over the 2^b levels.
struct ProbabilityMatrix {
    Eigen::MatrixXd p;  // levels x elements

    int levels() const noexcept { return static_cast<int>(p.rows()); }
    int elements() const noexcept { return static_cast<int>(p.cols()); }

    static ProbabilityMatrix uniform(int elements, int bits);
};

struct CeConfig {
    int candidates = 80;
    int elite = 8;
    double threshold = 1e-3;
    int max_iterations = 200;
    std::uint64_t seed = 0;
};

void validate(const CeConfig& cfg);

std::vector<PhaseConfig> sample_candidates(const ProbabilityMatrix& probs, int bits, int count,
                                           std::mt19937_64& rng);

// Elite-frequency update; each column is the empirical distribution of that
// element's index over the elites.
ProbabilityMatrix elite_update(std::span<const PhaseConfig> elites, int elements, int bits);

using PhaseObjective = std::function<double(const PhaseConfig&)>;

struct CeResult {
    PhaseConfig best_phase;             // best candidate ever evaluated
    double best_objective = 0.0;
    PhaseConfig final_batch_best;       // smallest candidate of the last batch
    double final_batch_objective = 0.0;
    int iterations = 0;
    std::int64_t evaluations = 0;
    bool converged = false;             // batch spread fell below the threshold
    std::vector<double> objective_trace;  // best-so-far after each iteration
    std::vector<double> batch_min;
    std::vector<double> batch_max;
};

// Cross-entropy search over discrete phase configurations. Throws
// std::runtime_error when the objective returns a non-finite value.
CeResult ce_optimize(const PhaseObjective& objective, int elements, int bits, const CeConfig& cfg);

struct ExhaustiveResult {
    PhaseConfig best_phase;
    double best_objective = 0.0;
    std::int64_t evaluations = 0;
};

// Full enumeration; ties go to the lexicographically smallest index vector.
// Refuses search spaces larger than 2^20 (ConfigError).
ExhaustiveResult exhaustive_search(const PhaseObjective& objective, int elements, int bits);

struct BeamformResult {
    CeResult search;
    Eigen::VectorXcd w;
};

}  // namespace nisac
