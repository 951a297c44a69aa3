#include "weldtherm/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "weldtherm/errors.hpp"

namespace weldtherm {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw ValidationError("not a number: '" + std::string(token) + "'");
    }
    return v;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            table.comments.push_back(line.substr(1));
            continue;
        }
        std::vector<std::string_view> cells;
        std::string_view rest = line;
        while (true) {
            const auto pos = rest.find(',');
            cells.push_back(rest.substr(0, pos));
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
        if (!header_seen) {
            for (const auto c : cells) table.header.emplace_back(c);
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto c : cells) row.push_back(parse_double(c));
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw ValidationError("csv file has no header row: " + path.string());
    return table;
}

}  // namespace weldtherm
