#include "robmom/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace robmom {

SlicePartition slice_partition(std::size_t n, std::size_t b) {
    if (b == 0) {
        throw std::invalid_argument("slice count must be at least 1");
    }
    if (n < b) {
        throw std::invalid_argument("slice partition needs n >= b (n=" + std::to_string(n) +
                                    ", b=" + std::to_string(b) + ")");
    }
    SlicePartition part{n, b, {}};
    part.boundaries.reserve(b + 1);
    for (std::size_t a = 0; a <= b; ++a) {
        // ceil(n*a/b) in integer arithmetic.
        part.boundaries.push_back((n * a + b - 1) / b);
    }
    return part;
}

double median_sorted(std::span<const double> sorted) {
    if (sorted.empty()) {
        throw std::invalid_argument("median of empty data");
    }
    const std::size_t n = sorted.size();
    if (n % 2 == 1) {
        return sorted[n / 2];
    }
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double median_inplace(std::span<double> scratch) {
    if (scratch.empty()) {
        throw std::invalid_argument("median of empty data");
    }
    const std::size_t n = scratch.size();
    auto mid = scratch.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(scratch.begin(), mid, scratch.end());
    const double upper = *mid;
    if (n % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(scratch.begin(), mid);
    return 0.5 * (lower + upper);
}

double sample_median(std::span<const double> data) {
    std::vector<double> scratch(data.begin(), data.end());
    return median_inplace(scratch);
}

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw std::invalid_argument("quantile of empty data");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("sample quantile requires 0 <= p <= 1");
    }
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> sorted_copy(std::span<const double> data) {
    std::vector<double> out(data.begin(), data.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace robmom
