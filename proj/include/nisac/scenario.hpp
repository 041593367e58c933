#pragma once

#include "nisac/beamform.hpp"
#include "nisac/channel.hpp"
#include "nisac/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace nisac {

// Cross-entropy settings as configured; zero candidates/elite mean "derive from
// L" (C = 5L, C_elite = C/10).
struct CeSettings {
    int candidates = 0;
    int elite = 0;
    double threshold = 1e-3;
    int max_iterations = 200;
};

// Node placement used for angles and for locating the user.
struct Placement {
    Position bs;
    Position user;
    std::array<Position, 2> sub_irs;
};

// Default top-view layout: BS 10 m and IRSs 5 m above the floor, d_B2I = 30 m,
// d_I2U = 10 m, the two sub-IRSs mirrored about the y = 0 plane of the user.
Placement default_placement();

struct SystemConfig {
    double snr_db = 0.0;
    ArrayLayout layout;  // 4x4 user, 4x4 IRS, N_t = 8
    double p_t = 1.0;
    int slots = 2;
    double zeta = 0.5;
    int bits = 2;
    double sigma_x2 = 1.0;
    int monte_carlo_draws = 100;
    int design_draws = 16;
    double td_split = 0.2;
    CeSettings ce;
    PathLossModel path_loss;
    std::optional<Placement> placement = default_placement();
    std::array<BlockGeometry, 2> blocks;
    std::optional<std::vector<int>> phase_indices;
};

// Defaults with block geometries derived from default_placement().
SystemConfig default_system();

// Recomputes both block geometries from a placement.
void apply_placement(SystemConfig& cfg, const Placement& placement);

// Throws ConfigError describing the first invalid field.
void validate(const SystemConfig& cfg);

CeConfig resolve_ce(const SystemConfig& cfg, std::uint64_t seed);

}  // namespace nisac
