#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace robmom {

/**
 * @brief Rank-based split of n sorted observations into b quantile slices.
 *
 * Boundaries are c_a = ceil(n * a / b), so slice a holds the sorted
 * (1-based) ranks c_a + 1 .. c_{a+1}. In 0-based terms that is the
 * half-open range [c_a, c_{a+1}).
 */
struct SlicePartition {
    std::size_t n = 0;
    std::size_t b = 0;
    std::vector<std::size_t> boundaries;  // b + 1 entries, front 0, back n

    [[nodiscard]] std::size_t begin(std::size_t a) const { return boundaries.at(a); }
    [[nodiscard]] std::size_t end(std::size_t a) const { return boundaries.at(a + 1); }
    [[nodiscard]] std::size_t size(std::size_t a) const { return end(a) - begin(a); }
};

/// Requires n >= b >= 1; std::invalid_argument otherwise.
[[nodiscard]] SlicePartition slice_partition(std::size_t n, std::size_t b);

/// Median of an already sorted range (average of the middle pair for even n).
[[nodiscard]] double median_sorted(std::span<const double> sorted);

/// Sample median; throws std::invalid_argument on empty input.
[[nodiscard]] double sample_median(std::span<const double> data);

/// Median that may reorder `scratch` in place (nth_element based).
[[nodiscard]] double median_inplace(std::span<double> scratch);

/// Linear interpolation between order statistics at 1-based position
/// p(n - 1) + 1 (Hyndman-Fan type 7). Input must be sorted, 0 <= p <= 1.
[[nodiscard]] double quantile_type7(std::span<const double> sorted, double p);

/// Sorted copy.
[[nodiscard]] std::vector<double> sorted_copy(std::span<const double> data);

}  // namespace robmom
