#include <doctest.h>

#include <cmath>

#include "randattr/omega.hpp"

using namespace randattr;

TEST_SUITE_BEGIN("omega");

TEST_CASE("omega limit of a contraction collapses to the origin") {
    auto sys = make_contraction(0.5, 2);
    auto omega = make_driver(3, sys.noise);
    auto ball = sample_ball({0.0, 0.0}, 1.0, 100);
    OmegaConfig cfg;
    cfg.t_min = 60;
    cfg.t_max = 120;
    cfg.stride = 10;
    cfg.prune_eps = 1e-12;
    auto lim = omega_limit(sys, ball, omega, cfg);
    for (const Vec& p : lim.points) CHECK(dist(p, {0.0, 0.0}) < 1e-10);
}

TEST_CASE("omega limit of the affine system is the series point") {
    auto sys = make_affine(NoiseSpec::discrete({0.3, 0.6}, {0.5, 0.5}), 1.0);
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        auto omega = make_driver(seed, sys.noise);
        double series = 0.0, prod = 1.0;
        for (int k = 1; k <= 80; ++k) {
            series += prod;
            prod *= increment(omega, -k)[0];
        }
        OmegaConfig cfg;
        cfg.t_min = 80;
        cfg.t_max = 120;
        cfg.stride = 20;
        cfg.sample_density = 30;
        cfg.prune_eps = 1e-12;
        auto ball = sample_ball({0.0}, 3.0, 30);
        auto lim = omega_limit(sys, ball, omega, cfg);
        for (const Vec& p : lim.points) CHECK(std::abs(p[0] - series) < 1e-9);
    }
}

TEST_CASE("refinement drift stays within the pruning scale") {
    auto sys = make_affine(NoiseSpec::discrete({0.3, 0.6}, {0.5, 0.5}), 1.0);
    auto omega = make_driver(9, sys.noise);
    auto ball = sample_ball({0.0}, 2.0, 40);
    OmegaConfig shallow, deep;
    shallow.t_min = 50;
    shallow.t_max = 100;
    deep.t_min = 100;
    deep.t_max = 200;
    double drift = omega_refinement_check(sys, ball, omega, shallow, deep);
    CHECK(drift <= shallow.prune_eps + deep.prune_eps + 1e-6);
}

TEST_CASE("invariance defects of the affine one-point attractor") {
    auto sys = make_affine(NoiseSpec::discrete({0.3, 0.6}, {0.5, 0.5}), 1.0);
    auto omega = make_driver(14, sys.noise);
    auto builder = [&](const DriverPath& w) {
        double series = 0.0, prod = 1.0;
        for (int k = 1; k <= 80; ++k) {
            series += prod;
            prod *= increment(w, -k)[0];
        }
        return PointCloud{{{series}}, 1e-12, "fixed point"};
    };
    // analytic check: A(theta omega) = a_0 A(omega) + b_0, so the one-step
    // forward image of the fiber point is exactly the next fiber point
    double a0 = increment(omega, 0)[0];
    double here = builder(omega).points[0][0];
    double there = builder(shift(omega, 1)).points[0][0];
    CHECK(std::abs((a0 * here + 1.0) - there) < 1e-9);

    auto defects = invariance_check(sys, 5, omega, builder);
    CHECK(defects.forward < 1e-8);
    CHECK(defects.strict < 1e-8);
}

TEST_CASE("invariance defects of an omega-limit builder stay near resolution") {
    auto sys = make_contraction(0.4, 1);
    auto omega = make_driver(17, sys.noise);
    OmegaConfig cfg;
    cfg.t_min = 60;
    cfg.t_max = 100;
    cfg.prune_eps = 1e-10;
    auto builder = [&](const DriverPath& w) {
        return omega_limit(sys, sample_ball({0.0}, 1.0, 30), w, cfg);
    };
    auto defects = invariance_check(sys, 3, omega, builder);
    CHECK(defects.forward <= 2.0 * defects.resolution + 1e-8);
    CHECK(defects.strict <= 2.0 * defects.resolution + 1e-8);
}

TEST_CASE("omega limits are monotone in the start set") {
    auto sys = make_affine(NoiseSpec::discrete({0.3, 0.6}, {0.5, 0.5}), 1.0);
    auto omega = make_driver(25, sys.noise);
    OmegaConfig cfg;
    cfg.t_min = 60;
    cfg.t_max = 120;
    auto small = sample_ball({0.0}, 1.0, 20);
    auto big = sample_ball({0.0}, 4.0, 60);
    double gap = omega_monotonicity(sys, small, big, omega, cfg);
    CHECK(gap <= 2.0 * cfg.prune_eps + 1e-6);
}

TEST_CASE("config validation") {
    OmegaConfig bad;
    bad.t_min = 100;
    bad.t_max = 50;
    CHECK_THROWS_AS(bad.validate(), config_error);
    OmegaConfig zero;
    zero.stride = 0;
    CHECK_THROWS_AS(zero.validate(), config_error);
}

TEST_SUITE_END();
