#include "nisac/arrays.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nisac {

std::pair<int, int> index_split(int m, int n_z, int n_y) {
    if (n_z < 1 || n_y < 1 || m < 1 || m > n_y * n_z) {
        throw std::out_of_range("index_split: element " + std::to_string(m) +
                                " outside a " + std::to_string(n_y) + "x" +
                                std::to_string(n_z) + " grid");
    }
    return index_split_unchecked(m, n_z);
}

Eigen::VectorXcd ura_response_from_phases(double u, double v, const UraShape& shape) {
    Eigen::VectorXcd out(shape.size());
    for (int m = 1; m <= shape.size(); ++m) {
        const auto [iy, iz] = index_split_unchecked(m, shape.n_z);
        out(m - 1) = std::polar(1.0, iy * u + iz * v);
    }
    return out;
}

Eigen::VectorXcd ura_response(double elevation, double azimuth, const UraShape& shape) {
    const double u = std::numbers::pi * std::cos(elevation) * std::sin(azimuth);
    const double v = std::numbers::pi * std::sin(elevation);
    return ura_response_from_phases(u, v, shape);
}

Eigen::VectorXcd ula_response(double elevation, int n) {
    Eigen::VectorXcd out(n);
    const double step = std::numbers::pi * std::sin(elevation);
    for (int k = 0; k < n; ++k) {
        out(k) = std::polar(1.0, k * step);
    }
    return out;
}

}  // namespace nisac
