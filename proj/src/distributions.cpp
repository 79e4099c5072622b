#include "robmom/distributions.hpp"

#include "robmom/format.hpp"
#include "robmom/normal.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <system_error>

namespace robmom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FamilyInfo {
    Family family;
    std::string_view name;
    std::size_t arity;
    std::array<double, 2> defaults;
    std::size_t required;  // leading parameters without a default
};

constexpr std::array<FamilyInfo, 8> kFamilies{{
    {Family::uniform, "uniform", 2, {0.0, 1.0}, 0},
    {Family::normal, "normal", 2, {0.0, 1.0}, 0},
    {Family::logistic, "logistic", 2, {0.0, 1.0}, 0},
    {Family::laplace, "laplace", 2, {0.0, 1.0}, 0},
    {Family::cauchy, "cauchy", 2, {0.0, 1.0}, 0},
    {Family::exponential, "exponential", 1, {1.0, 0.0}, 0},
    {Family::pareto, "pareto", 2, {0.0, 1.0}, 1},
    {Family::student_t, "student_t", 1, {0.0, 0.0}, 1},
}};

const FamilyInfo& info(Family family) {
    for (const auto& f : kFamilies) {
        if (f.family == family) {
            return f;
        }
    }
    throw std::logic_error("unknown distribution family");
}

Family family_from_name(std::string_view name) {
    if (name == "t" || name == "student-t" || name == "studentt") {
        return Family::student_t;
    }
    if (name == "exp") {
        return Family::exponential;
    }
    for (const auto& f : kFamilies) {
        if (f.name == name) {
            return f.family;
        }
    }
    throw std::invalid_argument("unknown distribution family '" + std::string(name) + "'");
}

double parse_number(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("invalid distribution parameter '" + std::string(text) + "'");
    }
    return value;
}

void require(bool ok, const char* what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

boost::math::students_t_distribution<double> student(double nu) {
    return boost::math::students_t_distribution<double>(nu);
}

}  // namespace

std::string_view family_name(Family family) noexcept {
    for (const auto& f : kFamilies) {
        if (f.family == family) {
            return f.name;
        }
    }
    return "unknown";
}

void validate(const DistributionSpec& spec) {
    const auto& fi = info(spec.family);
    if (spec.params.size() != fi.arity) {
        throw std::invalid_argument(std::string(fi.name) + " expects " + std::to_string(fi.arity) +
                                    " parameter(s), got " + std::to_string(spec.params.size()));
    }
    for (double p : spec.params) {
        require(std::isfinite(p), "distribution parameters must be finite");
    }
    const auto& p = spec.params;
    switch (spec.family) {
        case Family::uniform:
            require(p[0] < p[1], "uniform requires a < b");
            break;
        case Family::normal:
            require(p[1] > 0.0, "normal requires sigma > 0");
            break;
        case Family::logistic:
            require(p[1] > 0.0, "logistic requires s > 0");
            break;
        case Family::laplace:
            require(p[1] > 0.0, "laplace requires b > 0");
            break;
        case Family::cauchy:
            require(p[1] > 0.0, "cauchy requires s > 0");
            break;
        case Family::exponential:
            require(p[0] > 0.0, "exponential requires lambda > 0");
            break;
        case Family::pareto:
            require(p[0] > 0.0, "pareto requires alpha > 0");
            require(p[1] > 0.0, "pareto requires x_m > 0");
            break;
        case Family::student_t:
            require(p[0] >= 1.0 && p[0] == std::floor(p[0]) && p[0] <= 1.0e6,
                    "student_t requires integer nu >= 1");
            break;
    }
}

DistributionSpec parse_distribution_spec(std::string_view text) {
    const auto colon = text.find(':');
    DistributionSpec spec;
    spec.family = family_from_name(text.substr(0, colon));
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (true) {
            const auto comma = rest.find(',');
            spec.params.push_back(parse_number(rest.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
    }
    const auto& fi = info(spec.family);
    if (spec.params.size() < fi.required) {
        throw std::invalid_argument(std::string(fi.name) + " requires at least " +
                                    std::to_string(fi.required) + " parameter(s)");
    }
    for (std::size_t i = spec.params.size(); i < fi.arity; ++i) {
        spec.params.push_back(fi.defaults[i]);
    }
    validate(spec);
    return spec;
}

std::string to_string(const DistributionSpec& spec) {
    std::string out(family_name(spec.family));
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
        out += (i == 0 ? ':' : ',');
        out += format_double(spec.params[i]);
    }
    return out;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

Distribution::Distribution(DistributionSpec spec) : spec_(std::move(spec)) {
    validate(spec_);
    switch (spec_.family) {
        case Family::uniform:
            median_ = 0.5 * (param(0) + param(1));
            break;
        case Family::normal:
        case Family::logistic:
        case Family::laplace:
        case Family::cauchy:
            median_ = param(0);
            break;
        case Family::exponential:
            median_ = std::numbers::ln2 / param(0);
            break;
        case Family::pareto:
            median_ = param(1) * std::exp2(1.0 / param(0));
            break;
        case Family::student_t: {
            const double nu = param(0);
            t_log_norm_ = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                          0.5 * std::log(nu * std::numbers::pi);
            median_ = 0.0;
            break;
        }
    }
}

bool Distribution::has_finite_mean() const noexcept {
    switch (spec_.family) {
        case Family::cauchy:
            return false;
        case Family::pareto:
            return param(0) > 1.0;
        case Family::student_t:
            return param(0) > 1.0;
        default:
            return true;
    }
}

bool Distribution::is_symmetric() const noexcept {
    return spec_.family != Family::exponential && spec_.family != Family::pareto;
}

double Distribution::support_lower() const noexcept {
    switch (spec_.family) {
        case Family::uniform:
            return param(0);
        case Family::exponential:
            return 0.0;
        case Family::pareto:
            return param(1);
        default:
            return -kInf;
    }
}

double Distribution::support_upper() const noexcept {
    return spec_.family == Family::uniform ? param(1) : kInf;
}

double Distribution::pdf(double x) const {
    switch (spec_.family) {
        case Family::uniform:
            return (x < param(0) || x > param(1)) ? 0.0 : 1.0 / (param(1) - param(0));
        case Family::normal:
            return std_normal_pdf((x - param(0)) / param(1)) / param(1);
        case Family::logistic: {
            const double z = std::abs(x - param(0)) / param(1);
            const double e = std::exp(-z);
            return e / (param(1) * (1.0 + e) * (1.0 + e));
        }
        case Family::laplace:
            return std::exp(-std::abs(x - param(0)) / param(1)) / (2.0 * param(1));
        case Family::cauchy: {
            const double z = (x - param(0)) / param(1);
            return 1.0 / (std::numbers::pi * param(1) * (1.0 + z * z));
        }
        case Family::exponential:
            return x < 0.0 ? 0.0 : param(0) * std::exp(-param(0) * x);
        case Family::pareto: {
            const double alpha = param(0);
            const double xm = param(1);
            return x < xm ? 0.0 : alpha / xm * std::pow(xm / x, alpha + 1.0);
        }
        case Family::student_t: {
            const double nu = param(0);
            return std::exp(t_log_norm_ - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
        }
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    if (std::isnan(x)) {
        throw std::domain_error("cdf of NaN");
    }
    switch (spec_.family) {
        case Family::uniform:
            if (x <= param(0)) return 0.0;
            if (x >= param(1)) return 1.0;
            return (x - param(0)) / (param(1) - param(0));
        case Family::normal:
            return std_normal_cdf((x - param(0)) / param(1));
        case Family::logistic: {
            const double z = (x - param(0)) / param(1);
            return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
        }
        case Family::laplace: {
            const double z = (x - param(0)) / param(1);
            return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
        }
        case Family::cauchy: {
            const double z = (x - param(0)) / param(1);
            // atan2 form keeps relative accuracy in the lower tail.
            return z < 0.0 ? std::atan2(1.0, -z) / std::numbers::pi
                           : 0.5 + std::atan(z) / std::numbers::pi;
        }
        case Family::exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-param(0) * x);
        case Family::pareto:
            return x <= param(1) ? 0.0 : -std::expm1(param(0) * std::log(param(1) / x));
        case Family::student_t:
            if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
            return boost::math::cdf(student(param(0)), x);
    }
    return 0.0;
}

double Distribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("quantile requires 0 < p < 1");
    }
    if (p > 0.5 && spec_.family != Family::uniform) {
        return upper_quantile(1.0 - p);
    }
    switch (spec_.family) {
        case Family::uniform:
            return param(0) + p * (param(1) - param(0));
        case Family::normal:
            return param(0) + param(1) * std_normal_quantile(p);
        case Family::logistic:
            return param(0) + param(1) * (std::log(p) - std::log1p(-p));
        case Family::laplace:
            return param(0) + param(1) * std::log(2.0 * p);
        case Family::cauchy:
            return param(0) - param(1) / std::tan(std::numbers::pi * p);
        case Family::exponential:
            return -std::log1p(-p) / param(0);
        case Family::pareto:
            return param(1) * std::exp(-std::log1p(-p) / param(0));
        case Family::student_t:
            return boost::math::quantile(student(param(0)), p);
    }
    return 0.0;
}

double Distribution::upper_quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("upper quantile requires 0 < q < 1");
    }
    if (q > 0.5 && spec_.family != Family::uniform) {
        return quantile(1.0 - q);
    }
    switch (spec_.family) {
        case Family::uniform:
            return param(1) - q * (param(1) - param(0));
        case Family::normal:
            return param(0) - param(1) * std_normal_quantile(q);
        case Family::logistic:
            return param(0) + param(1) * (std::log1p(-q) - std::log(q));
        case Family::laplace:
            return param(0) - param(1) * std::log(2.0 * q);
        case Family::cauchy:
            return param(0) + param(1) / std::tan(std::numbers::pi * q);
        case Family::exponential:
            return -std::log(q) / param(0);
        case Family::pareto:
            return param(1) * std::pow(q, -1.0 / param(0));
        case Family::student_t:
            return -boost::math::quantile(student(param(0)), q);
    }
    return 0.0;
}

double Distribution::draw(RngStream& rng) const {
    if (spec_.family == Family::student_t) {
        const auto nu = static_cast<long>(param(0));
        const double z = std_normal_quantile(rng.uniform_open());
        double s = 0.0;
        for (long j = 0; j < nu; ++j) {
            const double w = std_normal_quantile(rng.uniform_open());
            s += w * w;
        }
        return z / std::sqrt(s / param(0));
    }
    return quantile(rng.uniform_open());
}

std::vector<double> Distribution::sample(std::size_t n, RngStream& rng) const {
    if (n == 0) {
        throw std::invalid_argument("sample size must be at least 1");
    }
    std::vector<double> out(n);
    for (auto& x : out) {
        x = draw(rng);
    }
    return out;
}

Distribution make_distribution(const DistributionSpec& spec) { return Distribution(spec); }

}  // namespace robmom
