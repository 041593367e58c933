#include <doctest.h>

#include "nisac/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace nisac;
using std::numbers::pi;

TEST_CASE("link_angles on axis-aligned and diagonal directions") {
    const LinkGeometry up = link_angles({0, 0, 0}, {0, 0, 5});
    CHECK(up.elevation == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(up.azimuth == 0.0);
    CHECK(up.distance == doctest::Approx(5.0));

    const LinkGeometry broadside = link_angles({0, 0, 0}, {1, 0, 0});
    CHECK(broadside.elevation == 0.0);
    CHECK(broadside.azimuth == 0.0);
    CHECK(broadside.distance == 1.0);

    const LinkGeometry diag = link_angles({0, 0, 0}, {0, 1, 1});
    CHECK(diag.elevation == doctest::Approx(pi / 4).epsilon(1e-14));
    CHECK(diag.azimuth == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK(diag.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("link_angles rejects coincident points") {
    CHECK_THROWS_AS(link_angles({1, 2, 3}, {1, 2, 3}), std::domain_error);
}

TEST_CASE("default-scenario arrival angle at the user") {
    // user (20,0,0) -> IRS (25, sqrt 50, 5): direction (0.5, sqrt(0.5), 0.5)
    const LinkGeometry g = link_angles({20, 0, 0}, {25, std::sqrt(50.0), 5});
    CHECK(g.distance == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(g.elevation == doctest::Approx(pi / 6).epsilon(1e-14));
    CHECK(g.azimuth == doctest::Approx(0.9553166181245093).epsilon(1e-14));
}

TEST_CASE("distance symmetry and direction-cosine bound") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int k = 0; k < 500; ++k) {
        const Position a{u(rng), u(rng), u(rng)};
        const Position b{u(rng), u(rng), u(rng)};
        const LinkGeometry ab = link_angles(a, b);
        const LinkGeometry ba = link_angles(b, a);
        CHECK(ab.distance == ba.distance);
        const double s = (ab.direction_phase_u * ab.direction_phase_u +
                          ab.direction_phase_v * ab.direction_phase_v) / (pi * pi);
        CHECK(s <= 1.0 + 1e-15);
    }
}

TEST_CASE("make_link fills direction phases") {
    const LinkGeometry g = make_link(3.0, 0.4, -1.1);
    CHECK(g.direction_phase_u == doctest::Approx(pi * std::cos(0.4) * std::sin(-1.1)));
    CHECK(g.direction_phase_v == doctest::Approx(pi * std::sin(0.4)));
}

TEST_CASE("path_gain reference values") {
    const PathLossModel m;
    CHECK(path_gain(1.0, 2.3, m) == doctest::Approx(std::pow(10.0, -1.5)).epsilon(1e-14));
    CHECK(path_gain(1.0, 7.0, m) == doctest::Approx(0.031622776601683794).epsilon(1e-14));
    CHECK(path_gain(30.0, 2.3, m) == doctest::Approx(0.0006328642407555055).epsilon(1e-13));
    CHECK(path_gain(10.0, 2.2, m) == doctest::Approx(0.0025118864315095794).epsilon(1e-13));
    CHECK_THROWS_AS(path_gain(0.5, 2.0, m), std::domain_error);
}

TEST_CASE("path_gain decreases in distance and exponent") {
    const PathLossModel m;
    double prev = path_gain(1.5, 2.0, m);
    for (double d = 2.0; d < 200.0; d *= 1.3) {
        const double g = path_gain(d, 2.0, m);
        CHECK(g < prev);
        CHECK(path_gain(d, 2.5, m) < g);
        prev = g;
    }
}

TEST_CASE("noise_power_for_snr") {
    CHECK(noise_power_for_snr(0.0, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(noise_power_for_snr(10.0, 1.0, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
    const PathLossModel m;
    const double n = noise_power_for_snr(0.0, path_gain(30.0, 2.3, m), path_gain(10.0, 2.2, m));
    CHECK(n == doctest::Approx(2.5270923563315716e-12).epsilon(1e-12));
    CHECK_THROWS_AS(noise_power_for_snr(0.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(noise_power_for_snr(0.0, 1.0, -2.0), std::domain_error);
}

TEST_CASE("received SNR round trip") {
    for (double snr : {-5.0, 0.0, 3.3, 10.0}) {
        const double n = noise_power_for_snr(snr, 2e-3, 7e-4);
        CHECK(received_snr_db(2e-3, 7e-4, n) == doctest::Approx(snr).epsilon(1e-12));
    }
}
