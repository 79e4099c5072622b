#include "robmom/experiments.hpp"

#include "robmom/comparators.hpp"
#include "robmom/error.hpp"
#include "robmom/format.hpp"
#include "robmom/mad_moments.hpp"
#include "robmom/medad_moments.hpp"
#include "robmom/order_stats.hpp"
#include "robmom/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace robmom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMleGradientTol = 1e-8;
constexpr std::size_t kMleMaxIterations = 500;

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next++; i < count && !failed; i = next++) body(i);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

struct LogLik {
    double value = 0.0;
    double d_theta = 0.0;  // dl/dtheta
    double d_eta = 0.0;    // dl/dlog s
    double h_tt = 0.0;
    double h_te = 0.0;
    double h_ee = 0.0;
};

LogLik cauchy_loglik(std::span<const double> x, double theta, double s) {
    LogLik out;
    const double n = static_cast<double>(x.size());
    double sum_log = 0.0;
    double sum_a = 0.0;  // 2r/(1+r^2)
    double sum_b = 0.0;  // 2r^2/(1+r^2)
    double sum_c = 0.0;  // (1-r^2)/(1+r^2)^2
    double sum_d = 0.0;  // 4r/(1+r^2)^2
    double sum_e = 0.0;  // 4r^2/(1+r^2)^2
    for (double xi : x) {
        const double r = (xi - theta) / s;
        const double r2 = r * r;
        const double w = 1.0 + r2;
        sum_log += std::log1p(r2);
        sum_a += 2.0 * r / w;
        sum_b += 2.0 * r2 / w;
        sum_c += (1.0 - r2) / (w * w);
        sum_d += 4.0 * r / (w * w);
        sum_e += 4.0 * r2 / (w * w);
    }
    out.value = -n * std::log(std::numbers::pi * s) - sum_log;
    out.d_theta = sum_a / s;
    out.d_eta = -n + sum_b;
    out.h_tt = -2.0 * sum_c / (s * s);
    out.h_te = -sum_d / s;
    out.h_ee = -sum_e;
    return out;
}

CauchyEstimate cauchy_mle(std::span<const double> x, double theta0, double s0) {
    CauchyEstimate est;
    est.method = CauchyMethod::mle;
    est.converged = false;
    const double n = static_cast<double>(x.size());
    double theta = theta0;
    double eta = std::log(s0);

    for (std::size_t it = 0; it < kMleMaxIterations; ++it) {
        const double s = std::exp(eta);
        const LogLik ll = cauchy_loglik(x, theta, s);
        const double g_norm = std::hypot(s * ll.d_theta, ll.d_eta) / n;
        est.iterations = it;
        if (g_norm < kMleGradientTol) {
            est.converged = true;
            break;
        }
        double dt = 0.0;
        double de = 0.0;
        const double det = ll.h_tt * ll.h_ee - ll.h_te * ll.h_te;
        if (ll.h_tt < 0.0 && det > 0.0) {
            // Newton: solve H d = -g.
            dt = (-ll.d_theta * ll.h_ee + ll.d_eta * ll.h_te) / det;
            de = (-ll.d_eta * ll.h_tt + ll.d_theta * ll.h_te) / det;
            // Near the optimum the log-likelihood is flat to rounding; take the
            // full step whenever it shrinks the gradient without losing likelihood.
            const double t_full = theta + dt;
            const double s_full = std::exp(eta + de);
            if (std::isfinite(t_full) && std::isfinite(s_full) && s_full > 0.0) {
                const LogLik next = cauchy_loglik(x, t_full, s_full);
                const double g_next = std::hypot(s_full * next.d_theta, next.d_eta) / n;
                const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(ll.value);
                if (g_next < g_norm && next.value >= ll.value - slack) {
                    theta = t_full;
                    eta += de;
                    est.iterations = it + 1;
                    continue;
                }
            }
        } else {
            // Steepest ascent in units of the current scale.
            dt = s * s * ll.d_theta / n;
            de = ll.d_eta / n;
        }
        const double slope = ll.d_theta * dt + ll.d_eta * de;
        double step = 1.0;
        bool moved = false;
        while (step > 1e-14) {
            const double t_new = theta + step * dt;
            const double e_new = eta + step * de;
            if (std::isfinite(t_new) && std::isfinite(e_new) && std::abs(e_new - eta) < 50.0) {
                const double v = cauchy_loglik(x, t_new, std::exp(e_new)).value;
                if (v >= ll.value + 1e-4 * step * slope) {
                    theta = t_new;
                    eta = e_new;
                    moved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!moved) {
            est.iterations = it + 1;
            break;
        }
        est.iterations = it + 1;
    }
    est.theta_hat = theta;
    est.s_hat = std::exp(eta);
    if (!est.converged) {
        const LogLik ll = cauchy_loglik(x, theta, est.s_hat);
        est.converged = std::hypot(est.s_hat * ll.d_theta, ll.d_eta) / n < kMleGradientTol;
    }
    return est;
}

constexpr std::array<std::string_view, 8> kRatioColumns{"gamma3", "gamma4", "psi3", "psi4",
                                                       "tau3",   "tau4",   "g1",   "g2"};

double column_value(const RatioSampleRow& row, std::string_view name) {
    if (name == "gamma3") return row.gamma3;
    if (name == "gamma4") return row.gamma4;
    if (name == "psi3") return row.psi3;
    if (name == "psi4") return row.psi4;
    if (name == "tau3") return row.tau3;
    if (name == "tau4") return row.tau4;
    if (name == "g1") return row.g1;
    if (name == "g2") return row.g2;
    throw std::invalid_argument("unknown ratio column '" + std::string(name) + "'");
}

}  // namespace

std::string_view method_name(CauchyMethod m) noexcept {
    switch (m) {
        case CauchyMethod::mle: return "mle";
        case CauchyMethod::medad: return "medad";
        case CauchyMethod::quantile: return "quantile";
    }
    return "unknown";
}

CauchyMethod parse_cauchy_method(std::string_view name) {
    for (auto m : {CauchyMethod::mle, CauchyMethod::medad, CauchyMethod::quantile}) {
        if (method_name(m) == name) return m;
    }
    throw std::invalid_argument("unknown estimator '" + std::string(name) +
                                "' (expected mle, medad or quantile)");
}

double cauchy_mean_loglik(std::span<const double> data, double theta, double s) {
    if (data.empty() || !(s > 0.0)) {
        throw std::invalid_argument("log-likelihood needs data and s > 0");
    }
    return cauchy_loglik(data, theta, s).value / static_cast<double>(data.size());
}

CauchyEstimate estimate_cauchy(std::span<const double> data, CauchyMethod method) {
    const std::size_t min_n = method == CauchyMethod::mle ? 5 : 3;
    if (data.size() < min_n) {
        throw InsufficientDataError("Cauchy " + std::string(method_name(method)) +
                                    " estimation needs at least " + std::to_string(min_n) +
                                    " observations");
    }
    const auto sorted = sorted_copy(data);
    CauchyEstimate est;
    est.method = method;
    est.theta_hat = median_sorted(sorted);
    switch (method) {
        case CauchyMethod::medad:
            est.s_hat = sample_medad_moments(sorted, 2).moment(2);
            break;
        case CauchyMethod::quantile:
            est.s_hat = 0.5 * (quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25));
            break;
        case CauchyMethod::mle: {
            const double s0 = sample_medad_moments(sorted, 2).moment(2);
            if (!(s0 > 0.0)) {
                throw InsufficientDataError("degenerate sample: zero scale");
            }
            est = cauchy_mle(sorted, est.theta_hat, s0);
            break;
        }
    }
    if (!(est.s_hat > 0.0)) {
        throw InsufficientDataError("degenerate sample: zero scale estimate");
    }
    return est;
}

void validate(const SimulationConfig& config) {
    robmom::validate(config.distribution);
    if (config.replicates < 1) {
        throw std::invalid_argument("replicate count B must be at least 1");
    }
    if (config.sample_sizes.empty()) {
        throw std::invalid_argument("at least one sample size is required");
    }
    for (auto n : config.sample_sizes) {
        if (n < 5) throw std::invalid_argument("sample sizes must be at least 5");
    }
    if (config.estimators.empty()) {
        throw std::invalid_argument("at least one estimator is required");
    }
    if (!config.truth && config.distribution.family != Family::cauchy) {
        throw std::invalid_argument("true (theta, s) must be given for non-Cauchy sampling");
    }
}

SimulationReport run_mc_study(const SimulationConfig& config) {
    validate(config);
    const Distribution model(config.distribution);
    const std::array<double, 2> truth =
        config.truth.value_or(std::array<double, 2>{config.distribution.params[0],
                                                    config.distribution.params[1]});
    const std::size_t sizes = config.sample_sizes.size();
    const std::size_t methods = config.estimators.size();
    const std::size_t cells = sizes * methods;

    struct Cell {
        double theta = kNaN;
        double s = kNaN;
        bool ok = false;
        bool converged = true;
    };
    std::vector<Cell> results(config.replicates * cells);

    parallel_for(config.replicates, config.threads, [&](std::size_t r) {
        RngStream rng(config.seed, r);
        for (std::size_t i = 0; i < sizes; ++i) {
            const auto sample = model.sample(config.sample_sizes[i], rng);
            for (std::size_t j = 0; j < methods; ++j) {
                Cell& c = results[r * cells + i * methods + j];
                try {
                    const auto est = estimate_cauchy(sample, config.estimators[j]);
                    c = {est.theta_hat, est.s_hat, true, est.converged};
                } catch (const InsufficientDataError&) {
                    c.ok = false;
                }
            }
        }
    });

    SimulationReport report;
    for (std::size_t j = 0; j < methods; ++j) {
        for (std::size_t p = 0; p < 2; ++p) {
            for (std::size_t i = 0; i < sizes; ++i) {
                double sum_err = 0.0;
                double sum_sq = 0.0;
                std::size_t used = 0;
                std::size_t nonconverged = 0;
                for (std::size_t r = 0; r < config.replicates; ++r) {
                    const Cell& c = results[r * cells + i * methods + j];
                    if (!c.ok) continue;
                    const double e = (p == 0 ? c.theta : c.s) - truth[p];
                    sum_err += e;
                    sum_sq += e * e;
                    ++used;
                    if (!c.converged) ++nonconverged;
                }
                SimulationRow row;
                row.estimator = config.estimators[j];
                row.parameter = p == 0 ? "theta" : "s";
                row.n = config.sample_sizes[i];
                row.replicates = config.replicates;
                row.seed = config.seed;
                row.skipped = config.replicates - used;
                row.nonconverged = nonconverged;
                if (used > 0) {
                    row.bias = sum_err / static_cast<double>(used);
                    row.mse = sum_sq / static_cast<double>(used);
                } else {
                    row.bias = kNaN;
                    row.mse = kNaN;
                }
                report.rows.push_back(row);
            }
        }
    }
    return report;
}

void write_simulation_csv(std::ostream& out, const SimulationReport& report) {
    out << "estimator,parameter,n,bias,mse,B,seed\n";
    for (const auto& row : report.rows) {
        out << method_name(row.estimator) << ',' << row.parameter << ',' << row.n << ','
            << format_double(row.bias) << ',' << format_double(row.mse) << ',' << row.replicates
            << ',' << row.seed << '\n';
    }
}

RatioSampleRow shape_ratios(std::span<const double> data, std::size_t rep) {
    RatioSampleRow row;
    row.rep = rep;
    const auto mad = sample_mad_moments(data, 4);
    const auto medad = sample_medad_moments(data, 4);
    const auto lm = sample_l_moments(data);
    const auto cm = classical_moments(data);
    row.gamma3 = mad.ratio(3).value_or(kNaN);
    row.gamma4 = mad.ratio(4).value_or(kNaN);
    row.psi3 = medad.ratio(3).value_or(kNaN);
    row.psi4 = medad.ratio(4).value_or(kNaN);
    row.tau3 = lm.tau3.value_or(kNaN);
    row.tau4 = lm.tau4.value_or(kNaN);
    row.g1 = cm.g1.value_or(kNaN);
    row.g2 = cm.g2.value_or(kNaN);
    return row;
}

RatioSampleTable sampling_distribution_study(const DistributionSpec& spec, std::size_t n,
                                             std::size_t replicates, std::uint64_t seed,
                                             unsigned threads) {
    if (n < 8) {
        throw std::invalid_argument("sampling distribution study needs n >= 8");
    }
    if (replicates < 1) {
        throw std::invalid_argument("replicate count B must be at least 1");
    }
    const Distribution model(spec);
    RatioSampleTable table;
    table.distribution = spec;
    table.n = n;
    table.replicates = replicates;
    table.seed = seed;
    table.rows.resize(replicates);
    parallel_for(replicates, threads, [&](std::size_t r) {
        RngStream rng(seed, r);
        table.rows[r] = shape_ratios(model.sample(n, rng), r);
    });
    return table;
}

void write_ratio_table_csv(std::ostream& out, const RatioSampleTable& table) {
    out << "rep";
    for (auto name : kRatioColumns) out << ',' << name;
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.rep;
        for (auto name : kRatioColumns) out << ',' << format_double(column_value(row, name));
        out << '\n';
    }
}

std::vector<double> ratio_column(const RatioSampleTable& table, std::string_view name) {
    std::vector<double> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) out.push_back(column_value(row, name));
    return out;
}

}  // namespace robmom
