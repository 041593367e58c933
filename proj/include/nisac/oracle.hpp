#pragma once

// Slow, independent reference implementations for the test suite and the
// `verify` command. Nothing here calls the steering-vector, channel-matrix or
// FIM assembly code of the main path; every entry is rebuilt from the link
// parameters with explicit loops.

#include "nisac/channel.hpp"
#include "nisac/fim.hpp"
#include "nisac/scenario.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nisac::oracle {

struct FimInstance {
    ChannelSet channels;  // only gains, angles and layout are read
    PhaseConfig phase;
    Eigen::VectorXcd w;
    std::vector<cd> symbols;
    double noise_var = 1.0;
};

// IRS->user channel from the per-entry closed form
// alpha * exp(j[(m_y - l_y) u + (m_z - l_z) v]).
Eigen::MatrixXcd compact_i2u(const ChannelSet& cs, double elevation, double azimuth);

// Stacked noise-free received vector [h(1); ...; h(T)] with the AoA replaced.
Eigen::VectorXcd stacked_mean(const FimInstance& inst, const std::vector<cd>& symbols,
                              double elevation, double azimuth);

// Central-difference FIM, (2/sigma^2) Re{dh_i^H dh_j}. `step` applies to the
// angle columns; h is linear in x(t), so symbol columns use kSymbolStep.
// Throws std::invalid_argument when step is outside [1e-8, 1e-4].
inline constexpr double kSymbolStep = 1.0;

FisherMatrix fd_fim(const FimInstance& inst, double step = 1e-6);

DerivativeChannels fd_channel_derivatives(const ChannelSet& cs, double step = 1e-6);

// max_ij |a_ij - b_ij| / sqrt(b_ii b_jj)
double fim_relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

double relative_frobenius(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& reference);

// Random instance with T in {1,2,4}, L and M in {4,16}.
FimInstance random_instance(std::mt19937_64& rng);

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct SuiteOptions {
    int fim_instances = 100;
    int ce_runs = 20;
};

// Every oracle cross-check on seeded random instances plus the exact
// scaling/invariance identities at the configured scenario.
std::vector<CheckResult> run_suite(const SystemConfig& cfg, std::uint64_t seed,
                                   const SuiteOptions& options = {});

}  // namespace nisac::oracle
