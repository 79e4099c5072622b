#pragma once

#include "robmom/distributions.hpp"
#include "robmom/moment_set.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace robmom {

/// Absolute tolerance on y for the population median solves.
inline constexpr double kMedadDefaultTol = 1e-12;
inline constexpr std::size_t kMedadMaxIterations = 200;

/// F_Y(y) = F(M + y) - F(M - y), the CDF of Y = |X - M|; clamped to [0, 1].
/// Throws std::domain_error for y < 0.
[[nodiscard]] double folded_cdf(const Distribution& model, double y);

/**
 * @brief Conditional CDF of |X - M| given X in slice a of b:
 *
 *   b * max(0, F(min(M + y, Q(v))) - F(max(M - y, Q(u)))),  u = a/b, v = (a+1)/b.
 *
 * When the clipped endpoint is the slice edge, its probability (u or v) is
 * used directly instead of F(Q(.)).
 */
[[nodiscard]] double slice_conditional_cdf(const Distribution& model, std::size_t a,
                                           std::size_t b, double y);

struct SliceMedianSolve {
    std::size_t slice = 0;
    std::size_t slices = 0;
    double u = 0.0;
    double v = 0.0;
    double value = 0.0;        // y_a reported in the moment (closed form when available)
    double bisection = 0.0;    // y_a from the conditional-CDF bisection
    double closed_form = 0.0;  // NaN when the slice straddles the median
    std::size_t iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/**
 * @brief Solves F~_{Y,a}(y_a) = 1/2 by bisection.
 *
 * The upper bracket starts at the larger finite distance from M to a slice
 * edge (1 if neither is finite or both are zero) and doubles until the
 * conditional CDF exceeds 1/2. Slices entirely on one side of M also get
 * the closed form Q(u + 1/(2b)) - M (or M - Q(v - 1/(2b)) below M), which
 * becomes the reported value.
 *
 * @throws ConvergenceError after `max_iterations` halvings or doublings.
 */
[[nodiscard]] SliceMedianSolve solve_slice_median(const Distribution& model, std::size_t a,
                                                  std::size_t b, double tol = kMedadDefaultTol,
                                                  std::size_t max_iterations = kMedadMaxIterations);

/// Phi_2: the y solving F_Y(y) = 1/2.
[[nodiscard]] double population_medad_scale(const Distribution& model,
                                            double tol = kMedadDefaultTol,
                                            std::size_t max_iterations = kMedadMaxIterations);

/**
 * @brief Population MedAD moments Phi_1..Phi_B and ratios Psi_3..Psi_B.
 *
 * Exists for every model, including those without a mean.
 */
[[nodiscard]] MomentSet population_medad_moments(const Distribution& model, std::size_t max_order,
                                                 double tol = kMedadDefaultTol);

/// Conditional medians of |x_(i) - m| within each slice of slice_partition(n, b).
[[nodiscard]] std::vector<double> sample_medad_slice_medians(std::span<const double> data,
                                                             std::size_t b);

/**
 * @brief Sample MedAD moments phi_1..phi_B and ratios psi_3..psi_B.
 *
 * phi_2 is the median of all |x_i - m|; higher orders are alternating sums of
 * the within-slice conditional medians. Requires n >= max_order >= 2.
 */
[[nodiscard]] MomentSet sample_medad_moments(std::span<const double> data, std::size_t max_order);

}  // namespace robmom
