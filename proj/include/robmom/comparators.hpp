#pragma once

#include <optional>
#include <span>

namespace robmom {

/// Sample L-moments lambda_1..lambda_4 with L-skewness and L-kurtosis.
struct LMomentSet {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double lambda4 = 0.0;
    std::optional<double> tau3;  // empty when lambda2 == 0
    std::optional<double> tau4;
};

/**
 * @brief Unbiased sample L-moments through probability-weighted moments
 *
 *   b_r = (1/n) sum_i x_(i) prod_{j=1..r} (i - j) / (n - j),
 *
 * with lambda_1 = b0, lambda_2 = 2b1 - b0, lambda_3 = 6b2 - 6b1 + b0,
 * lambda_4 = 20b3 - 30b2 + 12b1 - b0. Requires n >= 4.
 */
[[nodiscard]] LMomentSet sample_l_moments(std::span<const double> data);

/// Mean, sd and moment skewness/kurtosis, all with divisor n.
struct ClassicalMomentSet {
    double mean = 0.0;
    double sd = 0.0;
    std::optional<double> g1;  // m3 / m2^{3/2}
    std::optional<double> g2;  // m4 / m2^2 - 3
};

/// Requires n >= 2.
[[nodiscard]] ClassicalMomentSet classical_moments(std::span<const double> data);

}  // namespace robmom
