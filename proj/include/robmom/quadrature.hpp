#pragma once

#include <cstddef>
#include <functional>

namespace robmom {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
};

/**
 * @brief Globally adaptive 15-point Gauss-Kronrod integration on [a, b].
 *
 * The interval with the largest |K15 - G7| estimate is bisected until the
 * summed estimate is below max(abs_tol, rel_tol * |I|) or max_intervals is
 * reached. The integrand is never evaluated at the endpoints, so integrable
 * endpoint singularities are fine as long as they sit where doubles are
 * dense (near 0 rather than near 1).
 */
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& f, double a,
                                         double b, const QuadratureOptions& options = {});

}  // namespace robmom
