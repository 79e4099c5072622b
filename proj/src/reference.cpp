#include "robmom/reference.hpp"

#include "robmom/format.hpp"

#include <cmath>
#include <numbers>

namespace robmom {

namespace {

// Tabulated ratios carry three decimals; closed forms are checked tightly.
constexpr double kFormulaRelTol = 1e-6;
constexpr double kRatioTol = 1.5e-3;

PublishedValue moment(std::string name, std::size_t order, double value, std::string formula) {
    const double tol = kFormulaRelTol * std::max(1.0, std::abs(value));
    return {std::move(name), order, false, value, tol, std::move(formula)};
}

PublishedValue ratio(std::string name, std::size_t order, double value, double tol = kRatioTol) {
    return {std::move(name), order, true, value, tol, format_double(value)};
}

std::vector<PublishedValue> mad_values(const Distribution& model) {
    const auto& p = model.spec().params;
    const double root2pi = std::sqrt(2.0 / std::numbers::pi);
    switch (model.family()) {
        case Family::uniform:
            return {moment("delta1", 1, 0.5 * (p[0] + p[1]), "(a+b)/2"),
                    moment("delta2", 2, (p[1] - p[0]) / 4.0, "(b-a)/4"), ratio("gamma3", 3, 0.0),
                    ratio("gamma4", 4, -0.778, 1e-3)};
        case Family::normal:
            return {moment("delta1", 1, p[0], "mu"),
                    moment("delta2", 2, p[1] * root2pi, "sigma*sqrt(2/pi)"),
                    ratio("gamma3", 3, 0.0), ratio("gamma4", 4, -0.823)};
        case Family::logistic: {
            const double sigma = p[1] * std::numbers::pi / std::sqrt(3.0);
            return {moment("delta1", 1, p[0], "mu"),
                    moment("delta2", 2, sigma * root2pi, "sigma*sqrt(2/pi), sigma = s*pi/sqrt(3)"),
                    ratio("gamma3", 3, 0.0), ratio("gamma4", 4, -0.837)};
        }
        case Family::laplace:
            return {moment("delta1", 1, p[0], "mu"), moment("delta2", 2, p[1], "b"),
                    ratio("gamma3", 3, 0.0), ratio("gamma4", 4, -0.875)};
        case Family::exponential:
            return {moment("delta1", 1, std::numbers::ln2 / p[0], "ln2/lambda"),
                    moment("delta2", 2, (1.0 - 0.5 * std::numbers::ln2) / p[0],
                           "(1-0.5*ln2)/lambda"),
                    ratio("gamma3", 3, 0.442, 1e-3), ratio("gamma4", 4, -0.837)};
        case Family::pareto: {
            const double alpha = p[0];
            const double xm = p[1];
            const double median = xm * std::exp2(1.0 / alpha);
            std::vector<PublishedValue> out{moment("delta1", 1, median, "x_m*2^(1/alpha)")};
            if (alpha > 1.0) {
                out.push_back(moment("delta2", 2, alpha * xm / (alpha - 1.0) - median,
                                     "alpha*x_m/(alpha-1) - x_m*2^(1/alpha)"));
            }
            return out;
        }
        default:
            return {};
    }
}

std::vector<PublishedValue> medad_values(const Distribution& model) {
    const auto& p = model.spec().params;
    switch (model.family()) {
        case Family::uniform: {
            const double w = p[1] - p[0];
            return {moment("phi1", 1, 0.5 * (p[0] + p[1]), "(a+b)/2"),
                    moment("phi2", 2, w / 4.0, "(b-a)/4"), moment("phi3", 3, 0.0, "0"),
                    moment("phi4", 4, -w / 6.0, "-(b-a)/6")};
        }
        case Family::cauchy:
            return {moment("phi1", 1, p[0], "theta"), moment("phi2", 2, p[1], "s")};
        default:
            return {};
    }
}

}  // namespace

std::vector<PublishedValue> published_values(const Distribution& model, MomentSystem system) {
    switch (system) {
        case MomentSystem::mad_population:
            return mad_values(model);
        case MomentSystem::medad_population:
            return medad_values(model);
        default:
            return {};
    }
}

std::vector<Discrepancy> find_discrepancies(const Distribution& model, const MomentSet& moments) {
    std::vector<Discrepancy> out;
    for (const auto& ref : published_values(model, moments.system)) {
        if (ref.order > moments.max_order()) continue;
        double computed = 0.0;
        if (ref.is_ratio) {
            const auto r = moments.ratio(ref.order);
            if (!r) continue;
            computed = *r;
        } else {
            computed = moments.moment(ref.order);
        }
        if (std::abs(computed - ref.value) > ref.tolerance) {
            out.push_back({ref.quantity, to_string(model.spec()), ref.formula, ref.value, computed,
                           ref.tolerance});
        }
    }
    return out;
}

}  // namespace robmom
