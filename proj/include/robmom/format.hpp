#pragma once

#include <string>

namespace robmom {

/// Shortest decimal text that parses back to exactly `value`.
/// Non-finite values print as nan, inf, -inf.
[[nodiscard]] std::string format_double(double value);

}  // namespace robmom
