#pragma once

#include <Eigen/Core>

#include <utility>

namespace nisac {

// Half-wavelength uniform rectangular array in the y-o-z plane. Elements are
// numbered with the z index varying fastest.
struct UraShape {
    int n_y = 1;
    int n_z = 1;

    int size() const noexcept { return n_y * n_z; }
};

// 1-based element index -> (y index, z index), both 0-based.
// Throws std::out_of_range when m is outside [1, n_y*n_z] or n_z < 1.
std::pair<int, int> index_split(int m, int n_z, int n_y);

// Unchecked variant used in inner loops; m is 1-based.
inline std::pair<int, int> index_split_unchecked(int m, int n_z) noexcept {
    const int iy = (m - 1) / n_z;
    return {iy, m - iy * n_z - 1};
}

// Entry m: exp(j[i_y * pi cos(el) sin(az) + i_z * pi sin(el)]).
Eigen::VectorXcd ura_response(double elevation, double azimuth, const UraShape& shape);

// Same response from precomputed direction phases u = pi cos(el) sin(az), v = pi sin(el).
Eigen::VectorXcd ura_response_from_phases(double u, double v, const UraShape& shape);

// BS ULA along y: entry k (1-based) exp(j (k-1) pi sin(el)).
Eigen::VectorXcd ula_response(double elevation, int n);

}  // namespace nisac
