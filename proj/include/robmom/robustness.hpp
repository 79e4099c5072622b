#pragma once

#include "robmom/distributions.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace robmom {

/// Scalar statistics that sensitivity curves can be traced for.
enum class Statistic { median, delta2, phi2, gamma3, gamma4, psi3, psi4, tau3, tau4, g1, g2 };

[[nodiscard]] std::string_view statistic_name(Statistic s) noexcept;

/// Accepts the names above (e.g. "psi3", "tau3", "g1").
[[nodiscard]] Statistic parse_statistic(std::string_view name);

/// Evaluates `s` from scratch; InsufficientDataError when it is undefined on `data`.
[[nodiscard]] double evaluate_statistic(std::span<const double> data, Statistic s);

/// Asymptotic breakdown fraction of phi_{b+1}: 1/2 for b <= 1, 1/(2b) otherwise.
[[nodiscard]] double breakdown_point(std::size_t b) noexcept;

/// Smallest number of replaced points predicted to break phi_{b+1}: ceil(n/(2b)),
/// with b <= 1 treated as b = 1.
[[nodiscard]] std::size_t breakdown_count(std::size_t n, std::size_t b) noexcept;

/// Sample phi_{b+1}: the median for b = 0, phi_2 for b = 1.
[[nodiscard]] double medad_statistic(std::span<const double> data, std::size_t b);

struct ContaminationStep {
    std::size_t contaminated = 0;
    double value = 0.0;
    bool exceeds = false;   // |value| > magnitude / 100 at this k
    bool diverged = false;  // exceeds at this k or any smaller k
};

struct BreakdownReport {
    std::size_t order_b = 0;
    std::size_t n = 0;
    double analytic_fraction = 0.0;
    std::size_t analytic_count = 0;
    double magnitude = 0.0;
    std::vector<ContaminationStep> steps;
    std::optional<std::size_t> first_diverged;
};

/**
 * @brief Replaces the k largest observations by `magnitude` for k = 0..max_count
 * and recomputes phi_{b+1}; a step exceeds when |phi_{b+1}| > magnitude / 100.
 * Once a step exceeds, it and every later step are flagged as diverged.
 *
 * max_count defaults to floor(n / 2). Throws std::invalid_argument when
 * magnitude <= max|data| or max_count > n / 2.
 */
[[nodiscard]] BreakdownReport contamination_sweep(std::span<const double> data, std::size_t b,
                                                  double magnitude = 1e12,
                                                  std::optional<std::size_t> max_count = {});

struct SensitivityCurve {
    Statistic statistic = Statistic::median;
    std::size_t n = 0;
    double base_value = 0.0;
    std::vector<double> z;
    std::vector<double> values;  // (n + 1) * (T(data + z) - T(data))
};

/// Add-one sensitivity curve of `statistic` over `z_grid`. Requires n >= 5.
[[nodiscard]] SensitivityCurve sensitivity_curve(std::span<const double> data, Statistic statistic,
                                                 std::span<const double> z_grid);

/// `count` evenly spaced points from lo to hi inclusive.
[[nodiscard]] std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Influence function of the median, (1/2 - [z <= M]) / f(M).
/// Throws std::domain_error when f(M) == 0.
[[nodiscard]] double median_influence(const Distribution& model, double z);

}  // namespace robmom
