#pragma once

#include "robmom/distributions.hpp"
#include "robmom/moment_set.hpp"
#include "robmom/order_stats.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace robmom {

/// Default relative tolerance for the population slice integrals.
inline constexpr double kMadDefaultTol = 1e-10;

/**
 * @brief E(|X - M| ; X in Q(u, v]) as the probability-space integral of
 * |Q(p) - M| over (u, v].
 *
 * The piece above p = 1/2 is integrated in the exceedance variable q = 1 - p
 * through Distribution::upper_quantile, so the upper-tail singularity sits
 * at q = 0. Throws MomentsUndefinedError when the model has no finite mean.
 */
[[nodiscard]] double mad_slice_integral(const Distribution& model, double u, double v,
                                        double tol = kMadDefaultTol);

/// The b population slice terms E(|X - M| ; slice a), a = 0..b-1.
[[nodiscard]] std::vector<double> population_mad_slice_terms(const Distribution& model,
                                                             std::size_t b,
                                                             double tol = kMadDefaultTol);

/**
 * @brief Population MAD moments Delta_1..Delta_B and ratios Gamma_3..Gamma_B.
 *
 * Delta_1 is the median, Delta_2 = E|X - M|, and for b >= 2
 * Delta_{b+1} = sum_a (-1)^{a+1} E(|X - M| ; X in Q(a/b, (a+1)/b]).
 *
 * @throws MomentsUndefinedError if the model has no finite mean.
 * @throws std::invalid_argument if max_order < 2.
 */
[[nodiscard]] MomentSet population_mad_moments(const Distribution& model, std::size_t max_order,
                                               double tol = kMadDefaultTol);

/// (1/n) sum over slice a of |x_(i) - m|, for each slice of slice_partition(n, b).
[[nodiscard]] std::vector<double> sample_mad_slice_terms(std::span<const double> data,
                                                         std::size_t b);

/**
 * @brief Sample MAD moments delta_1..delta_B and ratios gamma_3..gamma_B.
 *
 * Slice terms are divided by the full n. Ratios are left empty when
 * delta_2 == 0. Requires n >= max_order >= 2.
 */
[[nodiscard]] MomentSet sample_mad_moments(std::span<const double> data, std::size_t max_order);

/// Plug-in pieces of the asymptotic variance of delta_{b+1}.
struct SliceCovariance {
    std::size_t b = 0;
    std::vector<double> means;             // mean of h_a over the sample
    std::vector<std::vector<double>> cov;  // b x b, divisor n
    double K = 0.0;                        // sum_{e,f} (-1)^{e+f} cov[e][f]
};

/**
 * @brief Empirical covariance of the truncated deviations
 * h_a(x_i) = |x_i - m| when x_i falls in slice a, else 0.
 *
 * Off-diagonal entries are -mean_e * mean_f exactly (the supports are
 * disjoint). Requires every slice to hold at least two points.
 */
[[nodiscard]] SliceCovariance mad_asymptotic_variance(std::span<const double> data, std::size_t b);

}  // namespace robmom
