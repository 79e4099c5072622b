#pragma once

#include "robmom/rng.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace robmom {

enum class Family { uniform, normal, logistic, laplace, cauchy, exponential, pareto, student_t };

[[nodiscard]] std::string_view family_name(Family family) noexcept;

/**
 * @brief Family plus its parameters, in the conventional order:
 *
 *   uniform(a, b), normal(mu, sigma), logistic(mu, s), laplace(mu, b),
 *   cauchy(theta, s), exponential(lambda), pareto(alpha, x_m), student_t(nu).
 *
 * Student-t is restricted to integer nu >= 1.
 */
struct DistributionSpec {
    Family family = Family::normal;
    std::vector<double> params;

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// Checks the parameter constraints; throws std::invalid_argument naming the violated one.
void validate(const DistributionSpec& spec);

/**
 * @brief Parses the `family:p1,p2` form, e.g. `cauchy:0,1`, `t:3`, `pareto:2,1`.
 *
 * Location/scale families default to (0, 1) when parameters are omitted,
 * exponential to lambda = 1 and pareto to x_m = 1. Student-t requires nu.
 */
[[nodiscard]] DistributionSpec parse_distribution_spec(std::string_view text);

/// Inverse of parse_distribution_spec (shortest round-trip number formatting).
[[nodiscard]] std::string to_string(const DistributionSpec& spec);

/**
 * @brief Immutable analytic model: density, CDF, quantile and sampler.
 *
 * Safe for concurrent shared use once constructed.
 */
class Distribution {
public:
    explicit Distribution(DistributionSpec spec);

    [[nodiscard]] const DistributionSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] Family family() const noexcept { return spec_.family; }

    [[nodiscard]] double pdf(double x) const;
    [[nodiscard]] double cdf(double x) const;

    /// Quantile for 0 < p < 1; std::domain_error otherwise.
    [[nodiscard]] double quantile(double p) const;

    /// Q(1 - q) evaluated without forming 1 - q, for 0 < q < 1.
    [[nodiscard]] double upper_quantile(double q) const;

    [[nodiscard]] double median() const noexcept { return median_; }
    [[nodiscard]] bool has_finite_mean() const noexcept;

    /// Closure of the support; +-infinity where unbounded.
    [[nodiscard]] double support_lower() const noexcept;
    [[nodiscard]] double support_upper() const noexcept;

    /// True when the density is symmetric about the median.
    [[nodiscard]] bool is_symmetric() const noexcept;

    /// One draw. Student-t uses Z / sqrt(S / nu); everything else inverse-CDF.
    [[nodiscard]] double draw(RngStream& rng) const;

    /// n i.i.d. draws; std::invalid_argument when n == 0.
    [[nodiscard]] std::vector<double> sample(std::size_t n, RngStream& rng) const;

private:
    [[nodiscard]] double param(std::size_t i) const noexcept { return spec_.params[i]; }

    DistributionSpec spec_;
    double median_ = 0.0;
    double t_log_norm_ = 0.0;
};

/// Validates `spec` and returns the model.
[[nodiscard]] Distribution make_distribution(const DistributionSpec& spec);

}  // namespace robmom
