#include "nisac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nisac {

LinkGeometry make_link(double distance, double elevation, double azimuth) {
    LinkGeometry g;
    g.distance = distance;
    g.elevation = elevation;
    g.azimuth = azimuth;
    g.direction_phase_u = std::numbers::pi * std::cos(elevation) * std::sin(azimuth);
    g.direction_phase_v = std::numbers::pi * std::sin(elevation);
    return g;
}

LinkGeometry link_angles(const Position& from, const Position& to) {
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    const double dz = to.z - from.z;
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (!(dist > 0.0)) {
        throw std::domain_error("link_angles: coincident positions");
    }
    const double uz = std::clamp(dz / dist, -1.0, 1.0);
    const double elevation = std::asin(uz);
    // atan2(0, 0) = 0 covers the vertical direction.
    const double azimuth = std::atan2(dy / dist, dx / dist);
    return make_link(dist, elevation, azimuth);
}

double path_gain(double distance, double exponent, const PathLossModel& model) {
    if (!(distance >= 1.0)) {
        throw std::domain_error("path_gain: distance below the 1 m reference");
    }
    const double loss_db = model.reference_loss_db + 10.0 * exponent * std::log10(distance);
    return std::pow(10.0, -loss_db / 20.0);
}

double noise_power_for_snr(double snr_db, double gain_b2i, double gain_i2u) {
    if (!(gain_b2i > 0.0) || !(gain_i2u > 0.0)) {
        throw std::domain_error("noise_power_for_snr: gains must be positive");
    }
    const double product = gain_b2i * gain_i2u;
    return product * product / std::pow(10.0, snr_db / 10.0);
}

double received_snr_db(double gain_b2i, double gain_i2u, double noise_power) {
    const double product = gain_b2i * gain_i2u;
    return 10.0 * std::log10(product * product / noise_power);
}

}  // namespace nisac
