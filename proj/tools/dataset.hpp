#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace robmom::cli {

/// One numeric column read from a delimited text file.
struct Dataset {
    std::vector<double> values;
    std::string source;
    std::size_t column = 0;
    std::size_t skipped_rows = 0;  // header plus any non-numeric rows
};

/**
 * Reads column `column` (0-based) of a delimited file. A non-numeric first
 * cell is treated as a header; later non-numeric or short rows are skipped
 * and counted. Blank lines are ignored.
 *
 * Throws std::runtime_error for an unreadable file or zero numeric rows and
 * std::out_of_range when the column does not exist in the first row.
 */
[[nodiscard]] Dataset load_dataset(const std::string& path, std::size_t column = 0,
                                   char delimiter = ',');

}  // namespace robmom::cli
