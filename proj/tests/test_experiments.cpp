#include "robmom/error.hpp"
#include "robmom/experiments.hpp"
#include "robmom/order_stats.hpp"
#include "robmom/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace robmom;

namespace {

std::vector<double> cauchy_data(std::size_t n, std::uint64_t stream, double theta = 0.0,
                                double s = 1.0) {
    RngStream rng(51, stream);
    return make_distribution({Family::cauchy, {theta, s}}).sample(n, rng);
}

double loglik(const std::vector<double>& x, double theta, double s) {
    double total = 0.0;
    for (double v : x) {
        const double z = (v - theta) / s;
        total += -std::log(std::numbers::pi * s * (1.0 + z * z));
    }
    return total;
}

// Coarse-to-fine grid search for the Cauchy maximum likelihood point.
std::pair<double, double> grid_mle(const std::vector<double>& x, double theta0, double s0) {
    double theta = theta0;
    double s = s0;
    double step_t = s0;
    double step_s = 0.5;
    for (int level = 0; level < 40; ++level) {
        double best = loglik(x, theta, s);
        double bt = theta;
        double bs = s;
        for (int i = -10; i <= 10; ++i) {
            for (int j = -10; j <= 10; ++j) {
                const double t = theta + i * step_t / 10.0;
                const double sc = s * std::exp(j * step_s / 10.0);
                const double v = loglik(x, t, sc);
                if (v > best) {
                    best = v;
                    bt = t;
                    bs = sc;
                }
            }
        }
        theta = bt;
        s = bs;
        step_t *= 0.5;
        step_s *= 0.5;
    }
    return {theta, s};
}

}  // namespace

TEST_CASE("Cauchy estimators on small data") {
    const std::vector<double> x{-1, 0, 1};
    const auto e = estimate_cauchy(x, CauchyMethod::medad);
    CHECK(e.theta_hat == 0.0);
    CHECK(e.s_hat == 1.0);
    const auto q = estimate_cauchy(std::vector<double>{1, 2, 3, 4, 5}, CauchyMethod::quantile);
    CHECK(q.theta_hat == 3.0);
    CHECK(q.s_hat == 1.0);
    CHECK_THROWS_AS((void)estimate_cauchy(std::vector<double>{1, 2}, CauchyMethod::medad),
                    InsufficientDataError);
    CHECK_THROWS_AS((void)estimate_cauchy(std::vector<double>{1, 2, 3, 4}, CauchyMethod::mle),
                    InsufficientDataError);
    CHECK_THROWS_AS((void)estimate_cauchy(std::vector<double>{5, 5, 5, 5, 9}, CauchyMethod::medad),
                    InsufficientDataError);
}

TEST_CASE("method names round trip") {
    for (auto m : {CauchyMethod::mle, CauchyMethod::medad, CauchyMethod::quantile}) {
        CHECK(parse_cauchy_method(method_name(m)) == m);
    }
    CHECK_THROWS_AS((void)parse_cauchy_method("mgof"), std::invalid_argument);
}

TEST_CASE("Cauchy estimators are location equivariant") {
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
        const auto x = cauchy_data(40, stream);
        const double c = 17.25;
        std::vector<double> y(x);
        for (auto& v : y) v += c;
        for (auto m : {CauchyMethod::medad, CauchyMethod::quantile}) {
            const auto ex = estimate_cauchy(x, m);
            const auto ey = estimate_cauchy(y, m);
            CHECK(ey.theta_hat - ex.theta_hat == doctest::Approx(c).epsilon(1e-13));
            CHECK(ey.s_hat == doctest::Approx(ex.s_hat).epsilon(1e-12));
        }
        const auto ex = estimate_cauchy(x, CauchyMethod::mle);
        const auto ey = estimate_cauchy(y, CauchyMethod::mle);
        REQUIRE(ex.converged);
        REQUIRE(ey.converged);
        CHECK(std::abs(ey.theta_hat - ex.theta_hat - c) < 1e-6);
        CHECK(std::abs(ey.s_hat - ex.s_hat) < 1e-6);
    }
}

TEST_CASE("maximum likelihood matches a grid-search oracle") {
    for (std::uint64_t stream = 100; stream < 120; ++stream) {
        const auto x = cauchy_data(30, stream, 2.0, 0.5);
        const auto e = estimate_cauchy(x, CauchyMethod::mle);
        REQUIRE(e.converged);
        const auto m = estimate_cauchy(x, CauchyMethod::medad);
        const auto [t, s] = grid_mle(x, m.theta_hat, m.s_hat);
        CHECK(std::abs(e.theta_hat - t) < 1e-6);
        CHECK(std::abs(e.s_hat - s) < 1e-6);
        CHECK(cauchy_mean_loglik(x, e.theta_hat, e.s_hat) * 30 >= loglik(x, t, s) - 1e-9);
    }
}

TEST_CASE("medad estimator is consistent on large samples") {
    const auto x = cauchy_data(100000, 999);
    const auto e = estimate_cauchy(x, CauchyMethod::medad);
    CHECK(std::abs(e.theta_hat) < 0.02);
    CHECK(std::abs(e.s_hat - 1.0) < 0.02);
}

TEST_CASE("single replicate study reproduces the estimate") {
    SimulationConfig cfg;
    cfg.replicates = 1;
    cfg.sample_sizes = {25};
    cfg.seed = 7;
    const auto report = run_mc_study(cfg);
    REQUIRE(report.rows.size() == 6);
    RngStream rng(7, 0);
    const auto x = make_distribution(cfg.distribution).sample(25, rng);
    for (const auto& row : report.rows) {
        const auto e = estimate_cauchy(x, row.estimator);
        const double err = row.parameter == "theta" ? e.theta_hat : e.s_hat - 1.0;
        CHECK(row.bias == err);
        CHECK(row.mse == err * err);
        CHECK(row.replicates == 1);
        CHECK(row.skipped == 0);
    }
}

TEST_CASE("study rows, ordering and determinism across thread counts") {
    SimulationConfig cfg;
    cfg.replicates = 300;
    cfg.sample_sizes = {10, 30};
    cfg.seed = 99;
    cfg.threads = 1;
    const auto a = run_mc_study(cfg);
    cfg.threads = 4;
    const auto b = run_mc_study(cfg);
    REQUIRE(a.rows.size() == 3 * 2 * 2);
    REQUIRE(b.rows.size() == a.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].bias == b.rows[i].bias);
        CHECK(a.rows[i].mse == b.rows[i].mse);
        CHECK(a.rows[i].mse >= a.rows[i].bias * a.rows[i].bias - 1e-12);
    }
    CHECK(a.rows[0].estimator == CauchyMethod::mle);
    CHECK(a.rows[0].parameter == "theta");
    CHECK(a.rows[0].n == 10);
    CHECK(a.rows[1].n == 30);
    CHECK(a.rows[2].parameter == "s");

    std::ostringstream csv;
    write_simulation_csv(csv, a);
    const std::string text = csv.str();
    CHECK(text.rfind("estimator,parameter,n,bias,mse,B,seed\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 13);
}

TEST_CASE("simulation config validation") {
    SimulationConfig cfg;
    cfg.replicates = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.sample_sizes = {4};
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.estimators.clear();
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.distribution = {Family::normal, {0.0, 1.0}};
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.truth = std::array<double, 2>{0.0, 1.0};
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("sampling distribution study") {
    const auto t = sampling_distribution_study({Family::student_t, {3.0}}, 100, 50, 5, 2);
    CHECK(t.rows.size() == 50);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(t.rows[i].rep == i);
        CHECK(std::isfinite(t.rows[i].psi3));
        CHECK(std::isfinite(t.rows[i].psi4));
    }
    const auto again = sampling_distribution_study({Family::student_t, {3.0}}, 100, 50, 5, 1);
    CHECK(ratio_column(t, "psi4") == ratio_column(again, "psi4"));
    CHECK(ratio_column(t, "g2").size() == 50);
    CHECK_THROWS_AS((void)ratio_column(t, "kappa"), std::invalid_argument);
    CHECK_THROWS_AS((void)sampling_distribution_study({Family::normal, {0.0, 1.0}}, 7, 5, 1),
                    std::invalid_argument);

    std::ostringstream csv;
    write_ratio_table_csv(csv, t);
    CHECK(csv.str().rfind("rep,gamma3,gamma4,psi3,psi4,tau3,tau4,g1,g2\n", 0) == 0);

    const auto r = shape_ratios(std::vector<double>(10, 1.0), 3);
    CHECK(r.rep == 3);
    CHECK(std::isnan(r.psi3));
    CHECK(std::isnan(r.g1));
}

TEST_CASE("maximum likelihood converges on every replicate") {
    SimulationConfig cfg;
    cfg.replicates = 3000;
    cfg.estimators = {CauchyMethod::mle};
    cfg.seed = 20260101;
    for (const auto& row : run_mc_study(cfg).rows) {
        CAPTURE(row.n);
        CHECK(row.nonconverged == 0);
        CHECK(row.skipped == 0);
    }
}
