#include "oracles.hpp"
#include "robmom/comparators.hpp"
#include "robmom/mad_moments.hpp"
#include "robmom/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace robmom;

TEST_CASE("L-moments on small data") {
    const auto l = sample_l_moments(std::vector<double>{1, 2, 3, 4, 5});
    CHECK(l.lambda1 == doctest::Approx(3.0));
    CHECK(l.lambda2 == doctest::Approx(1.0));
    CHECK(std::abs(*l.tau3) < 1e-15);

    const auto c = sample_l_moments(std::vector<double>{4, 4, 4, 4, 4});
    CHECK(c.lambda2 == 0.0);
    CHECK_FALSE(c.tau3.has_value());
    CHECK_FALSE(c.tau4.has_value());

    CHECK_THROWS_AS((void)sample_l_moments(std::vector<double>{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("L-moments match the all-subsets definition") {
    RngStream rng(31, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto x = oracle::random_dataset(rng, 4, 8);
        const auto l = sample_l_moments(x);
        const double tol = 1e-11 * (1.0 + std::abs(oracle::l_moment_bruteforce(x, 2)) +
                                    std::abs(oracle::l_moment_bruteforce(x, 1)));
        REQUIRE(std::abs(l.lambda1 - oracle::l_moment_bruteforce(x, 1)) <= tol);
        REQUIRE(std::abs(l.lambda2 - oracle::l_moment_bruteforce(x, 2)) <= tol);
        REQUIRE(std::abs(l.lambda3 - oracle::l_moment_bruteforce(x, 3)) <= tol);
        REQUIRE(std::abs(l.lambda4 - oracle::l_moment_bruteforce(x, 4)) <= tol);
        REQUIRE(l.lambda2 >= 0.0);
    }
}

TEST_CASE("L-ratios stay inside (-1, 1) on moderate samples") {
    RngStream rng(34, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto x = oracle::random_dataset(rng, 30, 300);
        const auto l = sample_l_moments(x);
        REQUIRE(std::abs(*l.tau3) < 1.0);
        REQUIRE(std::abs(*l.tau4) < 1.0);
    }
}

TEST_CASE("L-ratios are affine invariant") {
    RngStream rng(32, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto x = oracle::random_dataset(rng, 6, 200);
        const double a = 0.1 + 10.0 * rng.uniform_open();
        const double c = 20.0 * (rng.uniform_open() - 0.5);
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i] + c;
        const auto lx = sample_l_moments(x);
        const auto ly = sample_l_moments(y);
        REQUIRE(std::abs(*lx.tau3 - *ly.tau3) <= 1e-12);
        REQUIRE(std::abs(*lx.tau4 - *ly.tau4) <= 1e-12);
    }
}

TEST_CASE("classical moments") {
    const auto m = classical_moments(std::vector<double>{1, 2, 3, 4, 5});
    CHECK(m.mean == 3.0);
    CHECK(m.sd == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(*m.g1) < 1e-15);
    CHECK(*m.g2 == doctest::Approx(6.8 / 4.0 - 3.0));

    CHECK(*classical_moments(std::vector<double>{0, 0, 0, 1}).g1 > 0.0);

    const auto c = classical_moments(std::vector<double>{2, 2, 2});
    CHECK(c.sd == 0.0);
    CHECK_FALSE(c.g1.has_value());
    CHECK_FALSE(c.g2.has_value());
    CHECK_THROWS_AS((void)classical_moments(std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("skewness signs agree on exponential samples") {
    const auto d = make_distribution({Family::exponential, {1.0}});
    RngStream rng(33, 0);
    int agree_l = 0;
    int agree_g = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const auto x = d.sample(200, rng);
        const double gamma3 = *sample_mad_moments(x, 3).ratio(3);
        agree_l += (gamma3 > 0) == (*sample_l_moments(x).tau3 > 0);
        agree_g += (gamma3 > 0) == (*classical_moments(x).g1 > 0);
    }
    CHECK(agree_l > 0.95 * trials);
    CHECK(agree_g > 0.95 * trials);
}
