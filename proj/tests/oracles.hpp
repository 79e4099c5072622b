#pragma once

// Independent reference computations used only by the tests.

#include "robmom/distributions.hpp"
#include "robmom/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

/// Kolmogorov distance between the empirical CDF of `data` and `cdf`.
inline double ks_distance(std::vector<double> data, const std::function<double(double)>& cdf) {
    std::sort(data.begin(), data.end());
    const double n = static_cast<double>(data.size());
    double d = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double f = cdf(data[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i + 1) / n),
                      std::abs(f - static_cast<double>(i) / n)});
    }
    return d;
}

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// L-moment lambda_r from its order-statistic definition, averaging
/// (1/r) sum_k (-1)^k C(r-1,k) X_{r-k:r} over every r-subset of the data.
inline double l_moment_bruteforce(std::span<const double> data, int r) {
    const int n = static_cast<int>(data.size());
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    double total = 0.0;
    double count = 0.0;
    std::vector<double> sub(r);
    while (true) {
        for (int i = 0; i < r; ++i) sub[i] = data[idx[i]];
        std::sort(sub.begin(), sub.end());
        double v = 0.0;
        for (int k = 0; k < r; ++k) {
            v += (k % 2 == 0 ? 1.0 : -1.0) * binom(r - 1, k) * sub[r - k - 1];
        }
        total += v / r;
        count += 1.0;
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return total / count;
}

/// Median of |Q(p) - M| for p uniform on (u, v), from a midpoint grid of
/// `points` probabilities. Needs only the quantile function.
inline double slice_median_grid(const robmom::Distribution& model, double u, double v,
                                std::size_t points = 400001) {
    const double m = model.median();
    std::vector<double> dev(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double p = u + (v - u) * (static_cast<double>(i) + 0.5) / static_cast<double>(points);
        dev[i] = std::abs(model.quantile(p) - m);
    }
    auto mid = dev.begin() + static_cast<std::ptrdiff_t>(points / 2);
    std::nth_element(dev.begin(), mid, dev.end());
    return *mid;
}

/// Random dataset with a random size in [lo_n, hi_n] from a mix of shapes.
inline std::vector<double> random_dataset(robmom::RngStream& rng, std::size_t lo_n,
                                          std::size_t hi_n) {
    const std::size_t n = lo_n + static_cast<std::size_t>(rng() % (hi_n - lo_n + 1));
    const int shape = static_cast<int>(rng() % 3);
    std::vector<double> x(n);
    for (auto& v : x) {
        const double u = rng.uniform_open();
        switch (shape) {
            case 0: v = u; break;
            case 1: v = -std::log(u); break;
            default: v = std::tan(3.141592653589793 * (u - 0.5)); break;
        }
    }
    return x;
}

}  // namespace oracle
