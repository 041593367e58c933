#include <doctest.h>

#include "nisac/arrays.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace nisac;
using std::numbers::pi;
using cd = std::complex<double>;

TEST_CASE("index_split") {
    CHECK(index_split(1, 4, 4) == std::pair{0, 0});
    CHECK(index_split(5, 4, 4) == std::pair{1, 0});
    CHECK(index_split(16, 4, 4) == std::pair{3, 3});
    CHECK(index_split(7, 3, 3) == std::pair{2, 0});
    CHECK_THROWS_AS(index_split(0, 4, 4), std::out_of_range);
    CHECK_THROWS_AS(index_split(17, 4, 4), std::out_of_range);
    CHECK_THROWS_AS(index_split(1, 0, 4), std::out_of_range);
}

TEST_CASE("ura_response special directions") {
    const Eigen::VectorXcd broad = ura_response(0.0, 0.0, {4, 4});
    CHECK(broad.size() == 16);
    for (int m = 0; m < 16; ++m) {
        CHECK(std::abs(broad(m) - cd(1.0, 0.0)) < 1e-15);
    }

    for (double az : {0.0, 0.7, -2.0}) {
        const Eigen::VectorXcd end = ura_response(pi / 2, az, {2, 2});
        const double expected[] = {1.0, -1.0, 1.0, -1.0};
        for (int m = 0; m < 4; ++m) {
            CHECK(std::abs(end(m) - cd(expected[m], 0.0)) < 1e-15);
        }
    }
}

TEST_CASE("ura_response matches a per-element loop") {
    const double el = pi / 6, az = pi / 4;
    const Eigen::VectorXcd a = ura_response(el, az, {2, 2});
    int m = 0;
    for (int iy = 0; iy < 2; ++iy) {
        for (int iz = 0; iz < 2; ++iz) {
            const double phase = iy * pi * (std::sqrt(3.0) / 2) * (std::sqrt(2.0) / 2) + iz * pi / 2;
            CHECK(std::abs(a(m) - std::polar(1.0, phase)) < 1e-14);
            ++m;
        }
    }
}

TEST_CASE("ula_response") {
    const Eigen::VectorXcd flat = ula_response(0.0, 8);
    CHECK((flat - Eigen::VectorXcd::Ones(8)).norm() < 1e-15);
    const Eigen::VectorXcd end = ula_response(pi / 2, 4);
    const double expected[] = {1.0, -1.0, 1.0, -1.0};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(end(k) - cd(expected[k], 0.0)) < 1e-15);
    }
    const Eigen::VectorXcd two = ula_response(pi / 6, 2);
    CHECK(std::abs(two(0) - cd(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(two(1) - cd(0.0, 1.0)) < 1e-15);
}

TEST_CASE("steering vector properties") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int k = 0; k < 200; ++k) {
        const double el = ang(rng) / 2, az = ang(rng);
        const UraShape shape{1 + k % 5, 1 + (k / 5) % 4};
        const Eigen::VectorXcd a = ura_response(el, az, shape);
        CHECK(a.squaredNorm() == doctest::Approx(shape.size()).epsilon(1e-13));

        const double u = pi * std::cos(el) * std::sin(az), v = pi * std::sin(el);
        const Eigen::VectorXcd conj = ura_response_from_phases(-u, -v, shape);
        CHECK((conj - ura_response_from_phases(u, v, shape).conjugate()).norm() < 1e-13);
        CHECK((ura_response_from_phases(u, v, shape) - a).norm() < 1e-13);
    }
}

TEST_CASE("single-column URA collapses to a ULA") {
    // n_z = 1: elements spread along y with phase pi cos(el) sin(az) = pi sin(el')
    // for the ULA elevation el' = asin(cos(el) sin(az)).
    const double el = 0.3, az = 0.9;
    const Eigen::VectorXcd a = ura_response(el, az, {6, 1});
    const Eigen::VectorXcd b = ula_response(std::asin(std::cos(el) * std::sin(az)), 6);
    CHECK((a - b).norm() < 1e-13);
    // n_y = 1: elements along z with phase pi sin(el)
    CHECK((ura_response(el, az, {1, 5}) - ula_response(el, 5)).norm() < 1e-13);
}
