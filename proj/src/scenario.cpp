#include "nisac/scenario.hpp"

#include "nisac/errors.hpp"
#include "nisac/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nisac {

Placement default_placement() {
    // User at the origin of the floor plane shifted to x = 20; each sub-IRS sits
    // 5 m further along x, 5 m up and sqrt(50) m sideways (d_I2U = 10 m). The
    // BS is on y = 0 at 10 m height, 30 m from both sub-IRSs.
    const double side = std::sqrt(50.0);
    Placement p;
    p.user = {20.0, 0.0, 0.0};
    p.sub_irs = {Position{25.0, side, 5.0}, Position{25.0, -side, 5.0}};
    p.bs = {25.0 - std::sqrt(900.0 - 50.0 - 25.0), 0.0, 10.0};
    return p;
}

void apply_placement(SystemConfig& cfg, const Placement& placement) {
    cfg.placement = placement;
    for (std::size_t i = 0; i < 2; ++i) {
        cfg.blocks[i] = block_geometry(placement.bs, placement.sub_irs[i], placement.user);
    }
}

SystemConfig default_system() {
    SystemConfig cfg;
    apply_placement(cfg, default_placement());
    return cfg;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ConfigError(what);
    }
}

void check_shape(const UraShape& s, const std::string& name) {
    require(s.n_y >= 1 && s.n_z >= 1, name + ": array dimensions must be positive");
}

}  // namespace

void validate(const SystemConfig& cfg) {
    require(std::isfinite(cfg.snr_db), "snr_db must be finite");
    check_shape(cfg.layout.user, "user");
    check_shape(cfg.layout.irs, "irs");
    require(cfg.layout.n_t >= 1, "n_t must be at least 1");
    require(cfg.p_t > 0.0, "p_t must be positive");
    require(cfg.slots >= 1, "t_slots must be at least 1");
    require(cfg.zeta >= 0.0 && cfg.zeta <= 1.0, "zeta must be in [0, 1]");
    require(cfg.bits >= 1 && cfg.bits <= 8, "bits must be in [1, 8]");
    require(cfg.sigma_x2 > 0.0 && cfg.sigma_x2 <= 1.0, "sigma_x2 must be in (0, 1]");
    require(cfg.monte_carlo_draws >= 1, "monte_carlo_draws must be at least 1");
    require(cfg.design_draws >= 1, "design_draws must be at least 1");
    require(cfg.td_split >= 0.0 && cfg.td_split < 1.0, "td_split must be in [0, 1)");
    require(cfg.ce.candidates >= 0 && cfg.ce.elite >= 0, "ce sizes must be non-negative");
    require(cfg.ce.threshold > 0.0, "ce.threshold must be positive");
    require(cfg.ce.max_iterations >= 1, "ce.max_iterations must be at least 1");
    require(cfg.path_loss.reference_loss_db >= 0.0, "path_loss.reference_db must be >= 0");
    require(cfg.path_loss.exponent_b2i > 0.0 && cfg.path_loss.exponent_i2u > 0.0,
            "path-loss exponents must be positive");
    for (const BlockGeometry& b : cfg.blocks) {
        require(b.irs_to_user.distance >= 1.0 && b.bs_to_irs.distance >= 1.0,
                "link distances must be at least the 1 m reference");
    }
    if (cfg.phase_indices) {
        require(static_cast<int>(cfg.phase_indices->size()) == cfg.layout.irs.size(),
                "phase_indices must have one entry per IRS element");
        validate(PhaseConfig{*cfg.phase_indices, cfg.bits});
    }
    const CeConfig ce = resolve_ce(cfg, 0);
    validate(ce);
}

CeConfig resolve_ce(const SystemConfig& cfg, std::uint64_t seed) {
    CeConfig ce;
    ce.candidates = cfg.ce.candidates > 0 ? cfg.ce.candidates : 5 * cfg.layout.irs.size();
    ce.elite = cfg.ce.elite > 0 ? cfg.ce.elite : std::max(1, ce.candidates / 10);
    ce.threshold = cfg.ce.threshold;
    ce.max_iterations = cfg.ce.max_iterations;
    ce.seed = stream_seed(seed, Stream::kCrossEntropy);
    return ce;
}

}  // namespace nisac
