#pragma once

namespace robmom {

/// Standard normal density.
[[nodiscard]] double std_normal_pdf(double z) noexcept;

/// Standard normal CDF, 0.5 * erfc(-z / sqrt(2)).
[[nodiscard]] double std_normal_cdf(double z) noexcept;

/**
 * @brief Standard normal quantile.
 *
 * Acklam's rational approximation (relative error below 1.15e-9 over
 * (0, 1)), followed by one Halley correction step against the erfc-based
 * CDF, which brings the result to within a few ulps. Requires 0 < p < 1.
 */
[[nodiscard]] double std_normal_quantile(double p);

/// Raw Acklam approximation without the refinement step.
[[nodiscard]] double std_normal_quantile_acklam(double p) noexcept;

}  // namespace robmom
