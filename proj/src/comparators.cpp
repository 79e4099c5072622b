#include "robmom/comparators.hpp"

#include "robmom/error.hpp"
#include "robmom/order_stats.hpp"

#include <algorithm>
#include <cmath>

namespace robmom {

LMomentSet sample_l_moments(std::span<const double> data) {
    if (data.size() < 4) {
        throw InsufficientDataError("L-moments need at least 4 observations");
    }
    const auto x = sorted_copy(data);
    const double n = static_cast<double>(x.size());
    // Higher L-moments are shift invariant; centring keeps the weighted sums small.
    const double centre = x[x.size() / 2];
    double b0 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double i = static_cast<double>(k + 1);
        const double w1 = (i - 1.0) / (n - 1.0);
        const double w2 = w1 * (i - 2.0) / (n - 2.0);
        const double w3 = w2 * (i - 3.0) / (n - 3.0);
        const double d = x[k] - centre;
        b0 += d;
        b1 += w1 * d;
        b2 += w2 * d;
        b3 += w3 * d;
    }
    b0 /= n;
    b1 /= n;
    b2 /= n;
    b3 /= n;

    LMomentSet out;
    out.lambda1 = b0 + centre;
    out.lambda2 = 2.0 * b1 - b0;
    out.lambda3 = 6.0 * b2 - 6.0 * b1 + b0;
    out.lambda4 = 20.0 * b3 - 30.0 * b2 + 12.0 * b1 - b0;
    if (x.front() != x.back() && out.lambda2 > 0.0) {
        out.tau3 = out.lambda3 / out.lambda2;
        out.tau4 = out.lambda4 / out.lambda2;
    } else {
        out.lambda2 = 0.0;
    }
    return out;
}

ClassicalMomentSet classical_moments(std::span<const double> data) {
    if (data.size() < 2) {
        throw InsufficientDataError("classical moments need at least 2 observations");
    }
    const double n = static_cast<double>(data.size());
    double mean = 0.0;
    for (double x : data) mean += x;
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : data) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    ClassicalMomentSet out;
    out.mean = mean;
    out.sd = std::sqrt(m2);
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    if (*lo == *hi) {
        out.sd = 0.0;
    } else if (m2 > 0.0) {
        out.g1 = m3 / std::pow(m2, 1.5);
        out.g2 = m4 / (m2 * m2) - 3.0;
    }
    return out;
}

}  // namespace robmom
