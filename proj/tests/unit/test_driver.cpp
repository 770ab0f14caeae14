#include <doctest.h>

#include <cmath>

#include "randattr/driver.hpp"
#include "randattr/stats.hpp"

using namespace randattr;

TEST_SUITE_BEGIN("driver");

TEST_CASE("make_driver echoes inputs and starts at offset 0") {
    auto omega = make_driver(42, NoiseSpec::uniform(0, 1));
    CHECK(omega.seed == 42);
    CHECK(omega.offset == 0);

    auto disc = make_driver(42, NoiseSpec::discrete({0.3, 0.6}, {0.5, 0.5}));
    CHECK(disc.spec.values.size() == 2);
}

TEST_CASE("invalid noise specs are rejected") {
    CHECK_THROWS_AS(NoiseSpec::discrete({0.3}, {0.9}), config_error);
    CHECK_THROWS_AS(NoiseSpec::gaussian(0, 0), config_error);
    CHECK_THROWS_AS(NoiseSpec::uniform(1, 1), config_error);
    CHECK_THROWS_AS(NoiseSpec::discrete({0.1, 0.2}, {0.5}), config_error);
}

TEST_CASE("shift group law") {
    auto omega = make_driver(7, NoiseSpec::gaussian(0, 1));
    auto s = shift(shift(omega, 3), -3);
    CHECK(s.offset == omega.offset);
    CHECK(shift(omega, 0).offset == 0);
    auto chained = shift(shift(omega, 5), 11);
    CHECK(chained.offset == 16);
}

TEST_CASE("shift overflow raises a range error") {
    auto omega = make_driver(7, NoiseSpec::uniform(0, 1));
    auto far = shift(omega, std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(shift(far, 1), std::range_error);
}

TEST_CASE("increments are deterministic and shift-equivariant") {
    auto omega = make_driver(99, NoiseSpec::uniform(-1, 2, 3));
    CHECK(increment(omega, 17) == increment(omega, 17));
    CHECK(increment(shift(omega, 5), 0) == increment(omega, 5));
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t t = static_cast<std::int64_t>(uniform01(1, trial, 0) * 2000) - 1000;
        std::int64_t n = static_cast<std::int64_t>(uniform01(2, trial, 0) * 2000) - 1000;
        CHECK(increment(shift(omega, t), n) == increment(omega, n + t));
    }
}

TEST_CASE("gaussian increment sample mean over a two-sided window") {
    auto omega = make_driver(5, NoiseSpec::gaussian(0, 1));
    double sum = 0;
    int count = 0;
    for (std::int64_t n = -5000; n <= 5000; ++n, ++count) sum += increment(omega, n)[0];
    CHECK(std::abs(sum / count) < 0.05);  // 3 sigma / sqrt(10001) ~ 0.03
}

TEST_CASE("uniform increments stay in range, discrete hit their support") {
    auto u = make_driver(3, NoiseSpec::uniform(2, 5));
    auto d = make_driver(3, NoiseSpec::discrete({0.3, 0.6}, {0.5, 0.5}));
    bool saw_03 = false, saw_06 = false;
    for (std::int64_t n = -200; n < 200; ++n) {
        double x = increment(u, n)[0];
        CHECK(x >= 2);
        CHECK(x <= 5);
        double y = increment(d, n)[0];
        CHECK((y == 0.3 || y == 0.6));
        saw_03 |= y == 0.3;
        saw_06 |= y == 0.6;
    }
    CHECK(saw_03);
    CHECK(saw_06);
}

TEST_CASE("inverse normal cdf against known quantiles") {
    CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.84134474606854293) == doctest::Approx(1.0).epsilon(1e-9));
    // round trip through erfc at extreme tails
    for (double p : {1e-10, 1e-6, 0.1, 0.9, 1 - 1e-6}) {
        double x = inverse_normal_cdf(p);
        CHECK(0.5 * std::erfc(-x / std::sqrt(2.0)) == doctest::Approx(p).epsilon(1e-9));
    }
}

TEST_CASE("stationarity check passes for uniform and gaussian") {
    auto rep = stationarity_check(NoiseSpec::uniform(0, 1), 1000, 1000000);
    CHECK(rep.critical == doctest::Approx(1.628 * std::sqrt(2.0 / 1000)).epsilon(1e-12));
    CHECK(rep.pass);

    auto g = stationarity_check(NoiseSpec::gaussian(0, 1), 500, 1000);
    CHECK(g.pass);
}

TEST_CASE("stationarity check with zero window is degenerate") {
    auto rep = stationarity_check(NoiseSpec::uniform(0, 1), 200, 0);
    CHECK(rep.statistic == 0.0);
}

TEST_SUITE_END();
