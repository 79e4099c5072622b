#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace robmom {

enum class MomentSystem { mad_population, mad_sample, medad_population, medad_sample };

[[nodiscard]] constexpr std::string_view system_name(MomentSystem s) noexcept {
    switch (s) {
        case MomentSystem::mad_population: return "mad_population";
        case MomentSystem::mad_sample: return "mad_sample";
        case MomentSystem::medad_population: return "medad_population";
        case MomentSystem::medad_sample: return "medad_sample";
    }
    return "unknown";
}

/**
 * @brief Moments of orders 1..B of one system, plus the standardized ratios.
 *
 * values[0] is the location (a median), values[1] the scale, values[k-1]
 * the order-k moment. ratios[k-3] = values[k-1] / values[1] for k >= 3;
 * left empty when the scale is zero (degenerate).
 */
struct MomentSet {
    MomentSystem system = MomentSystem::mad_sample;
    std::vector<double> values;
    std::vector<double> ratios;

    [[nodiscard]] std::size_t max_order() const noexcept { return values.size(); }
    [[nodiscard]] bool degenerate() const noexcept { return values.size() >= 2 && values[1] == 0.0; }

    /// 1-based moment of the given order.
    [[nodiscard]] double moment(std::size_t order) const {
        if (order < 1 || order > values.size()) {
            throw std::out_of_range("moment order out of range");
        }
        return values[order - 1];
    }

    /// Standardized ratio of the given order (>= 3); nullopt when degenerate.
    [[nodiscard]] std::optional<double> ratio(std::size_t order) const {
        if (order < 3 || order > values.size()) {
            throw std::out_of_range("ratio order out of range");
        }
        if (ratios.empty()) {
            return std::nullopt;
        }
        return ratios[order - 3];
    }
};

/// Fills `ratios` from `values` unless the scale is zero.
inline void fill_ratios(MomentSet& set) {
    set.ratios.clear();
    if (set.values.size() < 3 || set.values[1] == 0.0) {
        return;
    }
    for (std::size_t k = 2; k < set.values.size(); ++k) {
        set.ratios.push_back(set.values[k] / set.values[1]);
    }
}

}  // namespace robmom
