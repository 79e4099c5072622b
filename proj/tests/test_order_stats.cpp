#include "robmom/order_stats.hpp"
#include "robmom/rng.hpp"

#include <doctest.h>

#include <stdexcept>
#include <vector>

using namespace robmom;

namespace {

// 1-based inclusive rank ranges of each slice.
std::vector<std::pair<std::size_t, std::size_t>> ranks(const SlicePartition& p) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < p.b; ++a) out.emplace_back(p.begin(a) + 1, p.end(a));
    return out;
}

using Ranges = std::vector<std::pair<std::size_t, std::size_t>>;

}  // namespace

TEST_CASE("slice_partition examples") {
    CHECK(ranks(slice_partition(6, 3)) == Ranges{{1, 2}, {3, 4}, {5, 6}});
    CHECK(ranks(slice_partition(5, 2)) == Ranges{{1, 3}, {4, 5}});
    CHECK(ranks(slice_partition(7, 3)) == Ranges{{1, 3}, {4, 5}, {6, 7}});
    CHECK(ranks(slice_partition(4, 1)) == Ranges{{1, 4}});
}

TEST_CASE("slice_partition rejects n < b and b = 0") {
    CHECK_THROWS_AS((void)slice_partition(2, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)slice_partition(5, 0), std::invalid_argument);
}

TEST_CASE("slice_partition covers every index once with near-equal sizes") {
    RngStream rng(5, 5);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t b = 1 + rng() % 9;
        const std::size_t n = b + rng() % 500;
        const auto p = slice_partition(n, b);
        REQUIRE(p.boundaries.front() == 0);
        REQUIRE(p.boundaries.back() == n);
        std::size_t lo = n;
        std::size_t hi = 0;
        for (std::size_t a = 0; a < b; ++a) {
            REQUIRE(p.end(a) > p.begin(a));
            lo = std::min(lo, p.size(a));
            hi = std::max(hi, p.size(a));
        }
        REQUIRE(hi - lo <= 1);
    }
}

TEST_CASE("sample_median") {
    CHECK(sample_median(std::vector<double>{1, 2, 3, 4, 5}) == 3.0);
    CHECK(sample_median(std::vector<double>{1, 2, 3, 4}) == 2.5);
    CHECK(sample_median(std::vector<double>{5, 1, 3}) == 3.0);
    CHECK(sample_median(std::vector<double>{4, 1, 3, 2}) == 2.5);
    CHECK_THROWS_AS((void)sample_median(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("quantile_type7 interpolates between order statistics") {
    const std::vector<double> x{1, 2, 3, 4};
    CHECK(quantile_type7(x, 0.0) == 1.0);
    CHECK(quantile_type7(x, 1.0) == 4.0);
    CHECK(quantile_type7(x, 0.25) == doctest::Approx(1.75));
    CHECK(quantile_type7(x, 0.75) == doctest::Approx(3.25));
    CHECK(quantile_type7(x, 0.5) == doctest::Approx(2.5));
    CHECK_THROWS_AS((void)quantile_type7(x, 1.5), std::domain_error);
}
