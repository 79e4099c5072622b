#include "dataset.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <system_error>

namespace robmom::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<std::string_view> field(std::string_view line, std::size_t column, char delimiter) {
    for (std::size_t i = 0; i < column; ++i) {
        const auto pos = line.find(delimiter);
        if (pos == std::string_view::npos) return std::nullopt;
        line.remove_prefix(pos + 1);
    }
    return trim(line.substr(0, line.find(delimiter)));
}

std::optional<double> parse_real(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

Dataset load_dataset(const std::string& path, std::size_t column, char delimiter) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    Dataset ds;
    ds.source = path;
    ds.column = column;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cell = field(line, column, delimiter);
        if (first && !cell) {
            throw std::out_of_range("column " + std::to_string(column) + " out of range in '" +
                                    path + "'");
        }
        first = false;
        const auto value = cell ? parse_real(*cell) : std::nullopt;
        if (value) {
            ds.values.push_back(*value);
        } else {
            ++ds.skipped_rows;
        }
    }
    if (ds.values.empty()) {
        throw std::runtime_error("no numeric rows in '" + path + "'");
    }
    return ds;
}

}  // namespace robmom::cli
