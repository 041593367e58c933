#include "nisac/channel.hpp"

#include "nisac/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nisac {

void validate(const PhaseConfig& cfg) {
    if (cfg.bits < 1 || cfg.bits > 16) {
        throw ConfigError("phase config: bits must be in [1, 16], got " + std::to_string(cfg.bits));
    }
    for (std::size_t l = 0; l < cfg.indices.size(); ++l) {
        const int s = cfg.indices[l];
        if (s < 0 || s >= cfg.levels()) {
            throw ConfigError("phase config: index " + std::to_string(s) + " at element " +
                              std::to_string(l) + " outside [0, " + std::to_string(cfg.levels()) +
                              ")");
        }
    }
}

Eigen::VectorXcd phase_beam(const PhaseConfig& cfg) {
    const double step = 2.0 * std::numbers::pi / cfg.levels();
    Eigen::VectorXcd xi(cfg.size());
    for (int l = 0; l < cfg.size(); ++l) {
        // Exact values on the axes so that b=1,2 configurations are bit-exact.
        const int s = cfg.indices[l];
        const int quarter = cfg.levels() / 4;
        if (s == 0) {
            xi(l) = cd(1.0, 0.0);
        } else if (2 * s == cfg.levels()) {
            xi(l) = cd(-1.0, 0.0);
        } else if (quarter > 0 && s == quarter) {
            xi(l) = cd(0.0, 1.0);
        } else if (quarter > 0 && s == 3 * quarter) {
            xi(l) = cd(0.0, -1.0);
        } else {
            xi(l) = std::polar(1.0, step * s);
        }
    }
    return xi;
}

Eigen::MatrixXcd phase_matrix(const PhaseConfig& cfg) {
    return phase_beam(cfg).asDiagonal();
}

BlockGeometry block_geometry(const Position& bs, const Position& irs, const Position& user) {
    BlockGeometry g;
    g.irs_to_user = link_angles(user, irs);
    g.bs_to_irs = link_angles(irs, bs);
    g.bs_departure_elevation = link_angles(bs, irs).elevation;
    return g;
}

LinkGeometry irs_departure(const LinkGeometry& arrival) {
    double az = arrival.azimuth + std::numbers::pi;
    if (az >= std::numbers::pi) {
        az -= 2.0 * std::numbers::pi;
    }
    return make_link(arrival.distance, -arrival.elevation, az);
}

ChannelSet build_channels(const BlockGeometry& geometry, const ArrayLayout& layout, cd gain_b2i,
                          cd gain_i2u) {
    ChannelSet cs;
    cs.gain_b2i = gain_b2i;
    cs.gain_i2u = gain_i2u;
    cs.link_i2u = geometry.irs_to_user;
    cs.link_b2i = geometry.bs_to_irs;
    cs.bs_departure_elevation = geometry.bs_departure_elevation;
    cs.layout = layout;

    const LinkGeometry& aoa = geometry.irs_to_user;
    const Eigen::VectorXcd b_user = ura_response(aoa.elevation, aoa.azimuth, layout.user);
    // The departing wave is described at the IRS by the reversed departure
    // direction, which coincides with the arrival angles at the user; the
    // entries then depend on index differences only.
    const LinkGeometry aod = irs_departure(aoa);
    const Eigen::VectorXcd b_irs_dep = ura_response(-aod.elevation, aod.azimuth - std::numbers::pi,
                                                    layout.irs);
    cs.h_i2u = gain_i2u * b_user * b_irs_dep.adjoint();

    const LinkGeometry& b2i = geometry.bs_to_irs;
    const Eigen::VectorXcd b_irs_arr = ura_response(b2i.elevation, b2i.azimuth, layout.irs);
    const Eigen::VectorXcd a_bs = ula_response(geometry.bs_departure_elevation, layout.n_t);
    cs.h_b2i = gain_b2i * b_irs_arr * a_bs.adjoint();
    return cs;
}

ChannelSet build_channels(const BlockGeometry& geometry, const PathLossModel& path_loss,
                          const ArrayLayout& layout, double phase_b2i, double phase_i2u) {
    const double g_b2i = path_gain(geometry.bs_to_irs.distance, path_loss.exponent_b2i, path_loss);
    const double g_i2u =
        path_gain(geometry.irs_to_user.distance, path_loss.exponent_i2u, path_loss);
    return build_channels(geometry, layout, std::polar(g_b2i, phase_b2i),
                          std::polar(g_i2u, phase_i2u));
}

DerivativeChannels derivative_channels(const ChannelSet& cs) {
    const int M = cs.layout.user.size();
    const int L = cs.layout.irs.size();
    const double pi = std::numbers::pi;
    const double cg = std::cos(cs.link_i2u.elevation);
    const double sg = std::sin(cs.link_i2u.elevation);
    const double cp = std::cos(cs.link_i2u.azimuth);
    const double sp = std::sin(cs.link_i2u.azimuth);

    DerivativeChannels d{Eigen::MatrixXcd(M, L), Eigen::MatrixXcd(M, L)};
    for (int m = 1; m <= M; ++m) {
        const auto [my, mz] = index_split_unchecked(m, cs.layout.user.n_z);
        for (int l = 1; l <= L; ++l) {
            const auto [ly, lz] = index_split_unchecked(l, cs.layout.irs.n_z);
            const double dy = my - ly;
            const double dz = mz - lz;
            const cd h = cs.h_i2u(m - 1, l - 1);
            d.d_phi(m - 1, l - 1) = cd(0.0, pi * dy * cg * cp) * h;
            d.d_gamma(m - 1, l - 1) = cd(0.0, pi * (dz * cg - dy * sg * sp)) * h;
        }
    }
    return d;
}

Eigen::VectorXcd mean_vector(const ChannelSet& cs, const Eigen::VectorXcd& xi,
                             const Eigen::VectorXcd& w, cd symbol) {
    if (xi.size() != cs.h_i2u.cols() || w.size() != cs.h_b2i.cols()) {
        throw std::invalid_argument("mean_vector: dimension mismatch");
    }
    const Eigen::VectorXcd incident = cs.h_b2i * w;
    return cs.h_i2u * (xi.cwiseProduct(incident) * symbol);
}

SignalModel unit_energy_signal(double var_x, int slots, double noise_var) {
    if (!(var_x > 0.0) || var_x > 1.0) {
        throw ConfigError("signal model: sigma_x^2 must be in (0, 1] for unit symbol energy");
    }
    if (slots < 1) {
        throw ConfigError("signal model: T must be at least 1");
    }
    if (!(noise_var > 0.0)) {
        throw ConfigError("signal model: noise variance must be positive");
    }
    SignalModel s;
    s.mean_x = cd(std::sqrt(1.0 - var_x), 0.0);
    s.var_x = var_x;
    s.slots = slots;
    s.noise_var = noise_var;
    return s;
}

}  // namespace nisac
