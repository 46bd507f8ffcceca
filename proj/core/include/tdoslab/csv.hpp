#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tdoslab {

/// One sweep-result row. The CSV dialect is fixed: comma separators,
/// header row, LF line endings, '.' decimal point, shortest decimal form
/// that round-trips the exact binary value.
struct RunRow {
    std::string scenario_id;
    std::string strategy;
    std::string duration_model;
    double attacker_share = 0.0;
    double complete_mean = 0.0;
    double complete_hw = 0.0;
    double incomplete_mean = 0.0;
    double incomplete_hw = 0.0;
    double unsuccessful_mean = 0.0;
    double unsuccessful_hw = 0.0;
    double avg_incall_mean = 0.0;
    double avg_incall_hw = 0.0;
    double occupancy_mean = 0.0;
    std::int64_t runs = 0;
    bool converged = false;
    std::uint64_t seed = 0;
    std::string status = "ok";

    bool operator==(const RunRow&) const = default;
};

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);
double parse_double(const std::string& s);

std::string emit_csv(const std::vector<RunRow>& rows);

/// Parses what emit_csv wrote. Throws ConfigError with row/column
/// coordinates on malformed input.
std::vector<RunRow> parse_csv(const std::string& text);

}  // namespace tdoslab
