#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robmom::cli {

inline constexpr const char* kToolName = "robmom-cli";
inline constexpr const char* kToolVersion = "1.0.0";

/// Exit statuses of run().
enum ExitStatus : int { kOk = 0, kComputationError = 1, kUsageError = 2 };

/**
 * Runs one command line (without the program name). Results go to `out`
 * unless `--out` names a file; diagnostics go to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robmom::cli
