#pragma once

#include "nisac/arrays.hpp"
#include "nisac/geometry.hpp"

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace nisac {

using cd = std::complex<double>;

// Discrete IRS configuration: element l reflects with phase 2*pi*indices[l]/2^bits.
struct PhaseConfig {
    std::vector<int> indices;
    int bits = 1;

    int levels() const noexcept { return 1 << bits; }
    int size() const noexcept { return static_cast<int>(indices.size()); }
    bool operator==(const PhaseConfig&) const = default;
};

// Throws ConfigError when any index is outside [0, 2^bits).
void validate(const PhaseConfig& cfg);

// Diagonal of the phase-shift matrix (the phase beam xi).
Eigen::VectorXcd phase_beam(const PhaseConfig& cfg);

Eigen::MatrixXcd phase_matrix(const PhaseConfig& cfg);

// Angles describing one sub-IRS time block.
struct BlockGeometry {
    LinkGeometry irs_to_user;           // AoA at the user (direction user -> IRS)
    LinkGeometry bs_to_irs;             // AoA at the IRS (direction IRS -> BS)
    double bs_departure_elevation = 0;  // elevation of the BS ULA departure
};

BlockGeometry block_geometry(const Position& bs, const Position& irs, const Position& user);

struct ArrayLayout {
    UraShape user{4, 4};
    UraShape irs{4, 4};
    int n_t = 8;
};

struct ChannelSet {
    Eigen::MatrixXcd h_b2i;  // L x N_t
    Eigen::MatrixXcd h_i2u;  // M x L
    cd gain_b2i;
    cd gain_i2u;
    LinkGeometry link_i2u;   // AoA at the user
    LinkGeometry link_b2i;   // AoA at the IRS
    double bs_departure_elevation = 0.0;
    ArrayLayout layout;
};

// IRS-side departure angles of the IRS->user link implied by the arrival
// angles at the user: gamma_D = -gamma_A, phi_D = phi_A + pi (wrapped to [-pi, pi)).
LinkGeometry irs_departure(const LinkGeometry& arrival);

// Channel matrices with explicit complex gains.
ChannelSet build_channels(const BlockGeometry& geometry, const ArrayLayout& layout, cd gain_b2i,
                          cd gain_i2u);

// Gains from the path-loss model, with the given phases (radians).
ChannelSet build_channels(const BlockGeometry& geometry, const PathLossModel& path_loss,
                          const ArrayLayout& layout, double phase_b2i, double phase_i2u);

// Analytic derivatives of H_I2U with respect to the AoA elevation and azimuth.
struct DerivativeChannels {
    Eigen::MatrixXcd d_gamma;  // M x L
    Eigen::MatrixXcd d_phi;    // M x L
};

DerivativeChannels derivative_channels(const ChannelSet& cs);

// Noise-free received vector H_I2U diag(xi) H_B2I w x.
Eigen::VectorXcd mean_vector(const ChannelSet& cs, const Eigen::VectorXcd& xi,
                             const Eigen::VectorXcd& w, cd symbol);

struct SignalModel {
    cd mean_x{0.0, 0.0};
    double var_x = 1.0;
    int slots = 2;
    double noise_var = 1.0;
};

// Signal model with real mean sqrt(1 - var_x), so that E|x|^2 = 1.
SignalModel unit_energy_signal(double var_x, int slots, double noise_var);

}  // namespace nisac
