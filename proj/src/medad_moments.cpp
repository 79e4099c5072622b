#include "robmom/medad_moments.hpp"

#include "robmom/error.hpp"
#include "robmom/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace robmom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double slice_edge(const Distribution& model, double p) {
    if (p <= 0.0) return model.support_lower();
    if (p >= 1.0) return model.support_upper();
    return model.quantile(p);
}

struct Bisection {
    double root = 0.0;
    std::size_t iterations = 0;
    double lo = 0.0;
    double hi = 0.0;
};

// Smallest y >= 0 with g(y) >= 1/2, for nondecreasing g with g(0) <= 1/2.
Bisection bisect_half(const std::function<double(double)>& g, double start, double tol,
                      std::size_t max_iterations, const char* what) {
    double lo = 0.0;
    double hi = (std::isfinite(start) && start > 0.0) ? start : 1.0;
    std::size_t doublings = 0;
    while (g(hi) < 0.5) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > max_iterations || !std::isfinite(hi)) {
            throw ConvergenceError(std::string(what) + ": could not bracket the median", lo, hi);
        }
    }
    std::size_t it = 0;
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (g(mid) >= 0.5) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (++it > max_iterations) {
            throw ConvergenceError(std::string(what) + ": bisection iteration cap reached", lo, hi);
        }
    }
    return {lo + 0.5 * (hi - lo), it, lo, hi};
}

}  // namespace

double folded_cdf(const Distribution& model, double y) {
    if (!(y >= 0.0)) {
        throw std::domain_error("folded CDF requires y >= 0");
    }
    const double m = model.median();
    const double v = model.cdf(m + y) - model.cdf(m - y);
    return std::clamp(v, 0.0, 1.0);
}

double slice_conditional_cdf(const Distribution& model, std::size_t a, std::size_t b, double y) {
    if (b == 0 || a >= b) {
        throw std::invalid_argument("slice index out of range");
    }
    if (!(y >= 0.0)) {
        throw std::domain_error("conditional slice CDF requires y >= 0");
    }
    const double bd = static_cast<double>(b);
    const double u = static_cast<double>(a) / bd;
    const double v = static_cast<double>(a + 1) / bd;
    const double m = model.median();
    const double q_u = slice_edge(model, u);
    const double q_v = slice_edge(model, v);

    const double upper = (m + y < q_v) ? model.cdf(m + y) : v;
    const double lower = (m - y > q_u) ? model.cdf(m - y) : u;
    return std::clamp(bd * std::max(0.0, upper - lower), 0.0, 1.0);
}

SliceMedianSolve solve_slice_median(const Distribution& model, std::size_t a, std::size_t b,
                                    double tol, std::size_t max_iterations) {
    if (b == 0 || a >= b) {
        throw std::invalid_argument("slice index out of range");
    }
    const double bd = static_cast<double>(b);
    SliceMedianSolve out;
    out.slice = a;
    out.slices = b;
    out.u = static_cast<double>(a) / bd;
    out.v = static_cast<double>(a + 1) / bd;
    const double m = model.median();

    double start = 0.0;
    for (double edge : {slice_edge(model, out.u), slice_edge(model, out.v)}) {
        if (std::isfinite(edge)) {
            start = std::max(start, std::abs(edge - m));
        }
    }
    const auto solved = bisect_half(
        [&](double y) { return slice_conditional_cdf(model, a, b, y); }, start, tol,
        max_iterations, "slice median");
    out.bisection = solved.root;
    out.iterations = solved.iterations;
    out.bracket_lo = solved.lo;
    out.bracket_hi = solved.hi;

    const double half_width = 0.5 / bd;
    if (out.u >= 0.5) {
        out.closed_form = model.quantile(out.u + half_width) - m;
    } else if (out.v <= 0.5) {
        out.closed_form = m - model.quantile(out.v - half_width);
    } else {
        out.closed_form = kNaN;
    }
    out.value = std::isnan(out.closed_form) ? out.bisection : out.closed_form;
    return out;
}

double population_medad_scale(const Distribution& model, double tol, std::size_t max_iterations) {
    const double m = model.median();
    const double start = std::max(std::abs(model.quantile(0.75) - m),
                                  std::abs(m - model.quantile(0.25)));
    return bisect_half([&](double y) { return folded_cdf(model, y); }, start, tol, max_iterations,
                       "MedAD scale")
        .root;
}

MomentSet population_medad_moments(const Distribution& model, std::size_t max_order, double tol) {
    if (max_order < 2) {
        throw std::invalid_argument("max_order must be at least 2");
    }
    MomentSet set;
    set.system = MomentSystem::medad_population;
    set.values.push_back(model.median());
    set.values.push_back(population_medad_scale(model, tol));
    for (std::size_t b = 2; b + 1 <= max_order; ++b) {
        double acc = 0.0;
        for (std::size_t a = 0; a < b; ++a) {
            const double y = solve_slice_median(model, a, b, tol).value;
            acc += (a % 2 == 0 ? -y : y);
        }
        set.values.push_back(acc);
    }
    fill_ratios(set);
    return set;
}

std::vector<double> sample_medad_slice_medians(std::span<const double> data, std::size_t b) {
    if (data.empty()) {
        throw InsufficientDataError("sample MedAD moments of empty data");
    }
    const auto sorted = sorted_copy(data);
    const auto part = slice_partition(sorted.size(), b);
    const double m = median_sorted(sorted);
    std::vector<double> medians(b);
    std::vector<double> scratch;
    for (std::size_t a = 0; a < b; ++a) {
        scratch.clear();
        for (std::size_t i = part.begin(a); i < part.end(a); ++i) {
            scratch.push_back(std::abs(sorted[i] - m));
        }
        medians[a] = median_inplace(scratch);
    }
    return medians;
}

MomentSet sample_medad_moments(std::span<const double> data, std::size_t max_order) {
    if (data.empty()) {
        throw InsufficientDataError("sample MedAD moments of empty data");
    }
    if (max_order < 2) {
        throw std::invalid_argument("max_order must be at least 2");
    }
    if (data.size() < max_order) {
        throw InsufficientDataError("sample MedAD moments need n >= max_order");
    }
    const auto sorted = sorted_copy(data);
    const double m = median_sorted(sorted);

    MomentSet set;
    set.system = MomentSystem::medad_sample;
    set.values.push_back(m);
    std::vector<double> dev(sorted.size());
    std::transform(sorted.begin(), sorted.end(), dev.begin(),
                   [m](double x) { return std::abs(x - m); });
    {
        auto scratch = dev;
        set.values.push_back(median_inplace(scratch));
    }
    std::vector<double> scratch;
    for (std::size_t b = 2; b + 1 <= max_order; ++b) {
        const auto part = slice_partition(sorted.size(), b);
        double acc = 0.0;
        for (std::size_t a = 0; a < b; ++a) {
            scratch.assign(dev.begin() + static_cast<std::ptrdiff_t>(part.begin(a)),
                           dev.begin() + static_cast<std::ptrdiff_t>(part.end(a)));
            const double med = median_inplace(scratch);
            acc += (a % 2 == 0 ? -med : med);
        }
        set.values.push_back(acc);
    }
    fill_ratios(set);
    return set;
}

}  // namespace robmom
