#pragma once

#include "robmom/distributions.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace robmom {

enum class CauchyMethod { mle, medad, quantile };

[[nodiscard]] std::string_view method_name(CauchyMethod m) noexcept;
[[nodiscard]] CauchyMethod parse_cauchy_method(std::string_view name);

struct CauchyEstimate {
    CauchyMethod method = CauchyMethod::medad;
    double theta_hat = 0.0;
    double s_hat = 0.0;
    bool converged = true;  // meaningful for mle only
    std::size_t iterations = 0;
};

/**
 * @brief Location/scale estimate for Cauchy data. Requires n >= 3 (n >= 5 for mle).
 *
 * - medad: (median, median |x_i - m|)
 * - quantile: (median, half the type-7 interquartile range)
 * - mle: Newton ascent on the log-likelihood in (theta, log s), started at
 *   the medad estimate, with backtracking and a gradient-step fallback when
 *   the Hessian is not negative definite. Converged when the scaled gradient
 *   (s * dl/dtheta, dl/dlog s) / n has norm below 1e-8; at most 500 steps.
 *
 * Throws InsufficientDataError when the scale estimate is zero.
 */
[[nodiscard]] CauchyEstimate estimate_cauchy(std::span<const double> data, CauchyMethod method);

/// Average Cauchy log-likelihood per observation.
[[nodiscard]] double cauchy_mean_loglik(std::span<const double> data, double theta, double s);

struct SimulationConfig {
    DistributionSpec distribution{Family::cauchy, {0.0, 1.0}};
    /// (theta, s) the estimates are scored against; defaults to the Cauchy parameters.
    std::optional<std::array<double, 2>> truth;
    std::vector<std::size_t> sample_sizes{25, 50, 100};
    std::size_t replicates = 10000;
    std::uint64_t seed = 20260101;
    std::vector<CauchyMethod> estimators{CauchyMethod::mle, CauchyMethod::medad,
                                         CauchyMethod::quantile};
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Throws std::invalid_argument on an unusable config.
void validate(const SimulationConfig& config);

struct SimulationRow {
    CauchyMethod estimator = CauchyMethod::medad;
    std::string_view parameter;  // "theta" or "s"
    std::size_t n = 0;
    double bias = 0.0;
    double mse = 0.0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    std::size_t skipped = 0;
    std::size_t nonconverged = 0;
};

struct SimulationReport {
    std::vector<SimulationRow> rows;
};

/**
 * @brief Seeded Monte Carlo bias/MSE study.
 *
 * Replicate r draws from RngStream(seed, r), one sample per size in config
 * order, and applies every estimator. Per-replicate results are merged in
 * replicate order, so the report does not depend on the thread count.
 * Rows are ordered by estimator, then parameter, then n.
 */
[[nodiscard]] SimulationReport run_mc_study(const SimulationConfig& config);

/// Header `estimator,parameter,n,bias,mse,B,seed`.
void write_simulation_csv(std::ostream& out, const SimulationReport& report);

struct RatioSampleRow {
    std::size_t rep = 0;
    double gamma3 = 0.0;
    double gamma4 = 0.0;
    double psi3 = 0.0;
    double psi4 = 0.0;
    double tau3 = 0.0;
    double tau4 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
};

struct RatioSampleTable {
    DistributionSpec distribution;
    std::size_t n = 0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    std::vector<RatioSampleRow> rows;
};

/// The eight shape ratios on n-point samples; undefined entries are NaN.
[[nodiscard]] RatioSampleRow shape_ratios(std::span<const double> data, std::size_t rep = 0);

/// B replicate rows of shape_ratios on samples of size n >= 8 drawn from `spec`.
[[nodiscard]] RatioSampleTable sampling_distribution_study(const DistributionSpec& spec,
                                                           std::size_t n, std::size_t replicates,
                                                           std::uint64_t seed,
                                                           unsigned threads = 0);

/// Header `rep,gamma3,gamma4,psi3,psi4,tau3,tau4,g1,g2`.
void write_ratio_table_csv(std::ostream& out, const RatioSampleTable& table);

/// Column of a ratio table by name ("psi3", "g2", ...).
[[nodiscard]] std::vector<double> ratio_column(const RatioSampleTable& table, std::string_view name);

}  // namespace robmom
