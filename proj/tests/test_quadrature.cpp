#include "robmom/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using robmom::integrate;

TEST_CASE("smooth integrands") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("integrable endpoint singularity at zero") {
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(integrate([](double x) { return -std::log(x); }, 0.0, 1.0).value ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("kink inside the interval") {
    const auto r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-10));
}

TEST_CASE("degenerate and invalid intervals") {
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
    CHECK_THROWS_AS((void)integrate([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)integrate([](double) { return 1.0; }, 0.0, INFINITY),
                    std::invalid_argument);
}

TEST_CASE("interval cap reports non-convergence") {
    robmom::QuadratureOptions opts;
    opts.max_intervals = 2;
    opts.rel_tol = 1e-15;
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts);
    CHECK_FALSE(r.converged);
}
