#include "robmom/robustness.hpp"

#include "robmom/comparators.hpp"
#include "robmom/error.hpp"
#include "robmom/mad_moments.hpp"
#include "robmom/medad_moments.hpp"
#include "robmom/order_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace robmom {

namespace {

constexpr std::array<std::pair<Statistic, std::string_view>, 11> kStatistics{{
    {Statistic::median, "median"},
    {Statistic::delta2, "delta2"},
    {Statistic::phi2, "phi2"},
    {Statistic::gamma3, "gamma3"},
    {Statistic::gamma4, "gamma4"},
    {Statistic::psi3, "psi3"},
    {Statistic::psi4, "psi4"},
    {Statistic::tau3, "tau3"},
    {Statistic::tau4, "tau4"},
    {Statistic::g1, "g1"},
    {Statistic::g2, "g2"},
}};

double require_value(const std::optional<double>& v, Statistic s) {
    if (!v) {
        throw InsufficientDataError(std::string(statistic_name(s)) +
                                    " is undefined: the sample has zero scale");
    }
    return *v;
}

}  // namespace

std::string_view statistic_name(Statistic s) noexcept {
    for (const auto& [stat, name] : kStatistics) {
        if (stat == s) return name;
    }
    return "unknown";
}

Statistic parse_statistic(std::string_view name) {
    for (const auto& [stat, label] : kStatistics) {
        if (label == name) return stat;
    }
    throw std::invalid_argument("unknown statistic '" + std::string(name) + "'");
}

double evaluate_statistic(std::span<const double> data, Statistic s) {
    switch (s) {
        case Statistic::median:
            return sample_median(data);
        case Statistic::delta2:
            return sample_mad_moments(data, 2).moment(2);
        case Statistic::phi2:
            return sample_medad_moments(data, 2).moment(2);
        case Statistic::gamma3:
            return require_value(sample_mad_moments(data, 3).ratio(3), s);
        case Statistic::gamma4:
            return require_value(sample_mad_moments(data, 4).ratio(4), s);
        case Statistic::psi3:
            return require_value(sample_medad_moments(data, 3).ratio(3), s);
        case Statistic::psi4:
            return require_value(sample_medad_moments(data, 4).ratio(4), s);
        case Statistic::tau3:
            return require_value(sample_l_moments(data).tau3, s);
        case Statistic::tau4:
            return require_value(sample_l_moments(data).tau4, s);
        case Statistic::g1:
            return require_value(classical_moments(data).g1, s);
        case Statistic::g2:
            return require_value(classical_moments(data).g2, s);
    }
    throw std::logic_error("unhandled statistic");
}

double breakdown_point(std::size_t b) noexcept {
    return b <= 1 ? 0.5 : 1.0 / (2.0 * static_cast<double>(b));
}

std::size_t breakdown_count(std::size_t n, std::size_t b) noexcept {
    const std::size_t denom = 2 * std::max<std::size_t>(b, 1);
    return (n + denom - 1) / denom;
}

double medad_statistic(std::span<const double> data, std::size_t b) {
    if (b == 0) {
        return sample_median(data);
    }
    return sample_medad_moments(data, b + 1).moment(b + 1);
}

BreakdownReport contamination_sweep(std::span<const double> data, std::size_t b, double magnitude,
                                    std::optional<std::size_t> max_count) {
    if (data.empty()) {
        throw InsufficientDataError("contamination sweep of empty data");
    }
    double max_abs = 0.0;
    for (double x : data) max_abs = std::max(max_abs, std::abs(x));
    if (!(magnitude > max_abs) || !std::isfinite(magnitude)) {
        throw std::invalid_argument("contamination magnitude must exceed max|data|");
    }
    const std::size_t n = data.size();
    const std::size_t limit = max_count.value_or(n / 2);
    if (limit > n / 2) {
        throw std::invalid_argument("max_count must not exceed n/2");
    }

    BreakdownReport report;
    report.order_b = b;
    report.n = n;
    report.analytic_fraction = breakdown_point(b);
    report.analytic_count = breakdown_count(n, b);
    report.magnitude = magnitude;

    auto work = sorted_copy(data);
    const double threshold = magnitude / 100.0;
    for (std::size_t k = 0; k <= limit; ++k) {
        if (k > 0) {
            work[n - k] = magnitude;
        }
        ContaminationStep step;
        step.contaminated = k;
        step.value = medad_statistic(work, b);
        step.exceeds = std::abs(step.value) > threshold;
        if (step.exceeds && !report.first_diverged) {
            report.first_diverged = k;
        }
        step.diverged = report.first_diverged.has_value();
        report.steps.push_back(step);
    }
    return report;
}

SensitivityCurve sensitivity_curve(std::span<const double> data, Statistic statistic,
                                   std::span<const double> z_grid) {
    if (data.size() < 5) {
        throw InsufficientDataError("sensitivity curve needs at least 5 observations");
    }
    SensitivityCurve curve;
    curve.statistic = statistic;
    curve.n = data.size();
    curve.base_value = evaluate_statistic(data, statistic);
    curve.z.assign(z_grid.begin(), z_grid.end());
    curve.values.reserve(z_grid.size());

    std::vector<double> augmented(data.begin(), data.end());
    augmented.push_back(0.0);
    const double factor = static_cast<double>(data.size() + 1);
    for (double z : z_grid) {
        augmented.back() = z;
        curve.values.push_back(factor * (evaluate_statistic(augmented, statistic) - curve.base_value));
    }
    return curve;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (count == 0) {
        return {};
    }
    if (count == 1) {
        return {lo};
    }
    std::vector<double> grid(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = lo + step * static_cast<double>(i);
    }
    grid.back() = hi;
    return grid;
}

double median_influence(const Distribution& model, double z) {
    const double m = model.median();
    const double f = model.pdf(m);
    if (!(f > 0.0)) {
        throw std::domain_error("median influence needs positive density at the median");
    }
    return (0.5 - (z <= m ? 1.0 : 0.0)) / f;
}

}  // namespace robmom
