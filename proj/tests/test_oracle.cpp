#include <doctest.h>

#include "nisac/experiments.hpp"
#include "nisac/oracle.hpp"

#include <numbers>
#include <random>
#include <stdexcept>

using namespace nisac;

TEST_CASE("step bounds") {
    std::mt19937_64 rng(1);
    const oracle::FimInstance inst = oracle::random_instance(rng);
    CHECK_THROWS_AS(oracle::fd_fim(inst, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(oracle::fd_fim(inst, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(oracle::fd_channel_derivatives(inst.channels, 0.0), std::invalid_argument);
    CHECK_NOTHROW(oracle::fd_fim(inst, 1e-4));
}

TEST_CASE("stacked mean matches the main-path mean vector") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
        const oracle::FimInstance inst = oracle::random_instance(rng);
        const Eigen::VectorXcd h = oracle::stacked_mean(inst, inst.symbols, inst.channels.link_i2u.elevation,
                                                        inst.channels.link_i2u.azimuth);
        const Eigen::VectorXcd xi = phase_beam(inst.phase);
        const Eigen::Index M = inst.channels.h_i2u.rows();
        for (std::size_t t = 0; t < inst.symbols.size(); ++t) {
            const Eigen::VectorXcd ref = mean_vector(inst.channels, xi, inst.w, inst.symbols[t]);
            CHECK((h.segment(static_cast<Eigen::Index>(t) * M, M) - ref).norm() <= 1e-12 * (1 + ref.norm()));
        }
    }
}

TEST_CASE("finite-difference error shrinks with the step") {
    std::mt19937_64 rng(3);
    int improved = 0;
    for (int k = 0; k < 10; ++k) {
        const oracle::FimInstance inst = oracle::random_instance(rng);
        const Eigen::MatrixXd J = assemble_fim(
            compute_betas(inst.channels, derivative_channels(inst.channels), phase_beam(inst.phase), inst.w,
                          inst.symbols),
            inst.noise_var).entries;
        const double coarse = oracle::fim_relative_error(oracle::fd_fim(inst, 1e-4).entries, J);
        const double fine = oracle::fim_relative_error(oracle::fd_fim(inst, 1e-6).entries, J);
        improved += fine < coarse;
        CHECK(fine < 1e-5);
    }
    CHECK(improved == 10);
}

TEST_CASE("scalar arrays give zero derivatives on both paths") {
    BlockGeometry g;
    g.irs_to_user = make_link(10.0, 0.2, 0.4);
    const ChannelSet cs = build_channels(g, ArrayLayout{{1, 1}, {1, 1}, 1}, cd(1, 0), cd(0.5, 0.5));
    const DerivativeChannels f = oracle::fd_channel_derivatives(cs, 1e-6);
    CHECK(f.d_gamma.norm() == 0.0);
    CHECK(f.d_phi.norm() == 0.0);
}

TEST_CASE("verification suite passes at the defaults") {
    oracle::SuiteOptions opt;
    opt.fim_instances = 20;
    opt.ce_runs = 10;
    for (const auto& c : oracle::run_suite(default_system(), 1, opt)) {
        INFO(c.name << " measured " << c.measured);
        CHECK(c.passed);
    }
}
