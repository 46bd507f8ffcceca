#include "tdoslab/csv.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "tdoslab/domain.hpp"

namespace tdoslab {

namespace {

constexpr std::array<const char*, 17> kColumns = {
    "scenario_id",     "strategy",        "duration_model",  "attacker_share",
    "complete_mean",   "complete_hw",     "incomplete_mean", "incomplete_hw",
    "unsuccessful_mean", "unsuccessful_hw", "avg_incall_mean", "avg_incall_hw",
    "occupancy_mean",  "runs",            "converged",       "seed",
    "status",
};

std::string header_line() {
    std::string h;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i) h += ',';
        h += kColumns[i];
    }
    return h;
}

[[noreturn]] void cell_error(std::size_t row, std::size_t col, const std::string& what) {
    throw ConfigError("csv row " + std::to_string(row) + ", column " + std::to_string(col + 1) +
                      " (" + kColumns[col] + "): " + what);
}

double parse_double_at(const std::string& s, std::size_t row, std::size_t col) {
    double v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) cell_error(row, col, "bad number '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

double parse_double(const std::string& s) {
    double v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ConfigError("cannot parse number '" + s + "'");
    return v;
}

std::string emit_csv(const std::vector<RunRow>& rows) {
    std::string out = header_line();
    out += '\n';
    for (const auto& r : rows) {
        out += r.scenario_id;
        out += ',';
        out += r.strategy;
        out += ',';
        out += r.duration_model;
        out += ',';
        out += format_double(r.attacker_share);
        out += ',';
        out += format_double(r.complete_mean);
        out += ',';
        out += format_double(r.complete_hw);
        out += ',';
        out += format_double(r.incomplete_mean);
        out += ',';
        out += format_double(r.incomplete_hw);
        out += ',';
        out += format_double(r.unsuccessful_mean);
        out += ',';
        out += format_double(r.unsuccessful_hw);
        out += ',';
        out += format_double(r.avg_incall_mean);
        out += ',';
        out += format_double(r.avg_incall_hw);
        out += ',';
        out += format_double(r.occupancy_mean);
        out += ',';
        out += std::to_string(r.runs);
        out += ',';
        out += r.converged ? "true" : "false";
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += r.status;
        out += '\n';
    }
    return out;
}

std::vector<RunRow> parse_csv(const std::string& text) {
    std::vector<RunRow> rows;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> cells;
        std::size_t pos = 0;
        for (;;) {
            const std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }

        if (lineno == 1) {
            if (line != header_line())
                throw ConfigError("csv row 1: unexpected header '" + line + "'");
            continue;
        }
        if (cells.size() != kColumns.size())
            throw ConfigError("csv row " + std::to_string(lineno) + ": expected " +
                              std::to_string(kColumns.size()) + " columns, found " +
                              std::to_string(cells.size()));

        RunRow r;
        r.scenario_id = cells[0];
        r.strategy = cells[1];
        r.duration_model = cells[2];
        r.attacker_share = parse_double_at(cells[3], lineno, 3);
        r.complete_mean = parse_double_at(cells[4], lineno, 4);
        r.complete_hw = parse_double_at(cells[5], lineno, 5);
        r.incomplete_mean = parse_double_at(cells[6], lineno, 6);
        r.incomplete_hw = parse_double_at(cells[7], lineno, 7);
        r.unsuccessful_mean = parse_double_at(cells[8], lineno, 8);
        r.unsuccessful_hw = parse_double_at(cells[9], lineno, 9);
        r.avg_incall_mean = parse_double_at(cells[10], lineno, 10);
        r.avg_incall_hw = parse_double_at(cells[11], lineno, 11);
        r.occupancy_mean = parse_double_at(cells[12], lineno, 12);
        {
            const std::string& s = cells[13];
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), r.runs);
            if (ec != std::errc{} || p != s.data() + s.size())
                cell_error(lineno, 13, "bad integer '" + s + "'");
        }
        if (cells[14] == "true") r.converged = true;
        else if (cells[14] == "false") r.converged = false;
        else cell_error(lineno, 14, "expected true/false, found '" + cells[14] + "'");
        {
            const std::string& s = cells[15];
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), r.seed);
            if (ec != std::errc{} || p != s.data() + s.size())
                cell_error(lineno, 15, "bad integer '" + s + "'");
        }
        r.status = cells[16];
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace tdoslab
