#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdoslab/csv.hpp"

namespace tdoslab {

/// Stacked complete/incomplete/unsuccessful bars per attacker share, for
/// one (strategy, duration model) slice. Rows must be non-empty.
std::string availability_chart_svg(const std::string& title, const std::vector<RunRow>& rows);

/// Mean talked fraction of interrupted calls per attacker share.
std::string avg_incall_chart_svg(const std::string& title, const std::vector<RunRow>& rows);

/// Attacker buffer occupancy over time.
std::string occupancy_chart_svg(const std::string& title,
                                const std::vector<std::pair<double, double>>& series);

}  // namespace tdoslab
