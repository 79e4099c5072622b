#include "robmom/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace robmom {

namespace {

// Kronrod abscissae (positive half, descending); odd indices are Gauss nodes.
constexpr std::array<double, 8> kXk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kWk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXk[j];
        const double sum = f(centre - dx) + f(centre + dx);
        kronrod += kWk[j] * sum;
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * sum;
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
    if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("integrate requires finite a <= b");
    }
    QuadratureResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }

    std::priority_queue<Segment> heap;
    const Segment first = gauss_kronrod(f, a, b);
    heap.push(first);
    double total = first.value;
    double error = first.error;
    result.evaluations = 15;

    while (true) {
        const double target = std::max(options.abs_tol, options.rel_tol * std::abs(total));
        if (error <= target) {
            result.converged = true;
            break;
        }
        if (heap.size() >= options.max_intervals) {
            break;
        }
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval can no longer be split in double precision.
            break;
        }
        heap.pop();
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the segments to shed the drift of the running updates.
    double value = 0.0;
    double err = 0.0;
    result.intervals = heap.size();
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    result.value = value;
    result.abs_error = err;
    if (!result.converged) {
        result.converged = err <= std::max(options.abs_tol, options.rel_tol * std::abs(value));
    }
    return result;
}

}  // namespace robmom
