#include "robmom/mad_moments.hpp"

#include "robmom/error.hpp"
#include "robmom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace robmom {

namespace {

void require_finite_mean(const Distribution& model) {
    if (!model.has_finite_mean()) {
        throw MomentsUndefinedError("MAD moments are undefined for " + to_string(model.spec()) +
                                    ": the distribution has no finite mean");
    }
}

double integrate_piece(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(a < b)) {
        return 0.0;
    }
    QuadratureOptions opts;
    opts.rel_tol = tol;
    opts.abs_tol = 1e-300;
    const auto r = integrate(f, a, b, opts);
    if (!r.converged) {
        throw ConvergenceError("slice integral did not reach tolerance", a, b);
    }
    return r.value;
}

}  // namespace

double mad_slice_integral(const Distribution& model, double u, double v, double tol) {
    require_finite_mean(model);
    if (!(0.0 <= u && u < v && v <= 1.0)) {
        throw std::invalid_argument("slice integral requires 0 <= u < v <= 1");
    }
    const double m = model.median();
    double total = 0.0;
    if (u < 0.5) {
        total += integrate_piece([&](double p) { return std::abs(model.quantile(p) - m); }, u,
                                 std::min(v, 0.5), tol);
    }
    if (v > 0.5) {
        total += integrate_piece([&](double q) { return std::abs(model.upper_quantile(q) - m); },
                                 1.0 - v, 1.0 - std::max(u, 0.5), tol);
    }
    return total;
}

std::vector<double> population_mad_slice_terms(const Distribution& model, std::size_t b,
                                               double tol) {
    if (b == 0) {
        throw std::invalid_argument("slice count must be at least 1");
    }
    std::vector<double> terms(b);
    const double bd = static_cast<double>(b);
    for (std::size_t a = 0; a < b; ++a) {
        terms[a] = mad_slice_integral(model, static_cast<double>(a) / bd,
                                      static_cast<double>(a + 1) / bd, tol);
    }
    return terms;
}

MomentSet population_mad_moments(const Distribution& model, std::size_t max_order, double tol) {
    if (max_order < 2) {
        throw std::invalid_argument("max_order must be at least 2");
    }
    require_finite_mean(model);
    MomentSet set;
    set.system = MomentSystem::mad_population;
    set.values.push_back(model.median());
    const auto halves = population_mad_slice_terms(model, 2, tol);
    set.values.push_back(halves[0] + halves[1]);
    for (std::size_t b = 2; b + 1 <= max_order; ++b) {
        const auto terms = b == 2 ? halves : population_mad_slice_terms(model, b, tol);
        double acc = 0.0;
        for (std::size_t a = 0; a < b; ++a) {
            acc += (a % 2 == 0 ? -terms[a] : terms[a]);
        }
        set.values.push_back(acc);
    }
    fill_ratios(set);
    return set;
}

std::vector<double> sample_mad_slice_terms(std::span<const double> data, std::size_t b) {
    const auto sorted = sorted_copy(data);
    const auto part = slice_partition(sorted.size(), b);
    const double m = median_sorted(sorted);
    const double n = static_cast<double>(sorted.size());
    std::vector<double> terms(b, 0.0);
    for (std::size_t a = 0; a < b; ++a) {
        double acc = 0.0;
        for (std::size_t i = part.begin(a); i < part.end(a); ++i) {
            acc += std::abs(sorted[i] - m);
        }
        terms[a] = acc / n;
    }
    return terms;
}

MomentSet sample_mad_moments(std::span<const double> data, std::size_t max_order) {
    if (data.empty()) {
        throw InsufficientDataError("sample MAD moments of empty data");
    }
    if (max_order < 2) {
        throw std::invalid_argument("max_order must be at least 2");
    }
    if (data.size() < max_order) {
        throw InsufficientDataError("sample MAD moments need n >= max_order");
    }
    const auto sorted = sorted_copy(data);
    const double m = median_sorted(sorted);
    const double n = static_cast<double>(sorted.size());

    MomentSet set;
    set.system = MomentSystem::mad_sample;
    set.values.push_back(m);
    double delta2 = 0.0;
    for (double x : sorted) {
        delta2 += std::abs(x - m);
    }
    set.values.push_back(delta2 / n);

    for (std::size_t b = 2; b + 1 <= max_order; ++b) {
        const auto part = slice_partition(sorted.size(), b);
        double acc = 0.0;
        for (std::size_t a = 0; a < b; ++a) {
            double slice = 0.0;
            for (std::size_t i = part.begin(a); i < part.end(a); ++i) {
                slice += std::abs(sorted[i] - m);
            }
            acc += (a % 2 == 0 ? -slice : slice) / n;
        }
        set.values.push_back(acc);
    }
    fill_ratios(set);
    return set;
}

SliceCovariance mad_asymptotic_variance(std::span<const double> data, std::size_t b) {
    if (b == 0) {
        throw std::invalid_argument("slice count must be at least 1");
    }
    if (data.size() < 2 * b) {
        throw InsufficientDataError("asymptotic variance needs n >= 2b");
    }
    const auto sorted = sorted_copy(data);
    const auto part = slice_partition(sorted.size(), b);
    for (std::size_t a = 0; a < b; ++a) {
        if (part.size(a) < 2) {
            throw InsufficientDataError("every slice needs at least two points");
        }
    }
    const double m = median_sorted(sorted);
    const std::size_t n = sorted.size();
    const double nd = static_cast<double>(n);

    // h[a][i]: truncated deviation of observation i for slice a.
    std::vector<std::vector<double>> h(b, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < b; ++a) {
        for (std::size_t i = part.begin(a); i < part.end(a); ++i) {
            h[a][i] = std::abs(sorted[i] - m);
        }
    }

    SliceCovariance out;
    out.b = b;
    out.means.resize(b);
    for (std::size_t a = 0; a < b; ++a) {
        double s = 0.0;
        for (double v : h[a]) s += v;
        out.means[a] = s / nd;
    }
    out.cov.assign(b, std::vector<double>(b, 0.0));
    for (std::size_t e = 0; e < b; ++e) {
        for (std::size_t f = e; f < b; ++f) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += h[e][i] * h[f][i];
            const double c = s / nd - out.means[e] * out.means[f];
            out.cov[e][f] = c;
            out.cov[f][e] = c;
        }
    }
    double k = 0.0;
    for (std::size_t e = 0; e < b; ++e) {
        for (std::size_t f = 0; f < b; ++f) {
            k += ((e + f) % 2 == 0 ? 1.0 : -1.0) * out.cov[e][f];
        }
    }
    out.K = std::max(k, 0.0);
    return out;
}

}  // namespace robmom
