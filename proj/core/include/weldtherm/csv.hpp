#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace weldtherm {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Strict double parse; the whole token must be consumed.
double parse_double(std::string_view token);

struct CsvTable {
    std::vector<std::string> comments;  ///< leading '#' lines, without the marker
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV written by this project (comments, one header row).
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace weldtherm
