#pragma once

#include <stdexcept>
#include <string>

namespace robmom {

/// Raised when an expectation-based moment does not exist for a model
/// (the model has no finite mean).
class MomentsUndefinedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a sample is too small or too degenerate for a statistic.
class InsufficientDataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A root-finder ran out of iterations. Carries the last bracket.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " (bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "])"),
          lo_(lo),
          hi_(hi) {}

    [[nodiscard]] double bracket_lo() const noexcept { return lo_; }
    [[nodiscard]] double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

}  // namespace robmom
