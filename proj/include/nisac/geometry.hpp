#pragma once

// Node placement, link angles and large-scale path loss.
//
// Angles follow the convention shared by every array in the system: arrays lie
// in the y-o-z plane, so a unit direction d maps to
//   elevation = asin(d_z),  azimuth = atan2(d_y, d_x),
// and only the direction cosines cos(el)sin(az) (along y) and sin(el) (along z)
// ever enter a steering phase.

namespace nisac {

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct LinkGeometry {
    double distance = 1.0;
    double elevation = 0.0;
    double azimuth = 0.0;
    double direction_phase_u = 0.0;  // pi * cos(elevation) * sin(azimuth)
    double direction_phase_v = 0.0;  // pi * sin(elevation)
};

// Builds a LinkGeometry with the direction phases filled in.
LinkGeometry make_link(double distance, double elevation, double azimuth);

struct PathLossModel {
    double reference_loss_db = 30.0;  // at 1 m
    double exponent_b2i = 2.3;
    double exponent_i2u = 2.2;
};

// Angles of the direction from `from` towards `to`. Throws std::domain_error
// for coincident positions.
LinkGeometry link_angles(const Position& from, const Position& to);

// Amplitude gain 10^(-(PL0 + 10*exponent*lg d)/20). Throws std::domain_error for d < 1.
double path_gain(double distance, double exponent, const PathLossModel& model);

// Noise power giving the requested SNR |g_b2i*g_i2u|^2 / sigma_z^2.
double noise_power_for_snr(double snr_db, double gain_b2i, double gain_i2u);

double received_snr_db(double gain_b2i, double gain_i2u, double noise_power);

}  // namespace nisac
