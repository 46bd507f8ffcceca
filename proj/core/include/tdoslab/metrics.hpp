#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tdoslab/engine.hpp"

namespace tdoslab {

struct MeasureCounts {
    int honest = 0;        // all honest calls, censored included
    int complete = 0;
    int incall = 0;        // resolved honest calls that reached in_call
    int unsuccessful = 0;
    int incomplete = 0;    // = incall - complete
    int censored = 0;      // honest calls unresolved at the horizon
};

/// The per-run quality measures. Ratios divide by the resolved honest
/// count (honest - censored) and are unset when that count is zero.
struct MeasureSet {
    std::optional<double> complete;
    std::optional<double> incomplete;
    std::optional<double> unsuccessful;
    double avg_incall = 1.0;
    bool avg_incall_vacuous = false;  // no incomplete calls: 1.0 by convention
    double total_time_in_call = 0.0;  // sum of talked fractions
    MeasureCounts counts;
    double mean_attacker_occupancy = 0.0;
};

MeasureSet compute_measures(const RunTrace& trace);

/// (time, attacker_slots / k) per occupancy sample.
std::vector<std::pair<SimTime, double>> occupancy_series(const RunTrace& trace);

/// Time-weighted mean of a sampled series; each point holds until the next
/// sample, the last until `horizon`.
double time_weighted_mean(const std::vector<std::pair<SimTime, double>>& series, SimTime horizon);

}  // namespace tdoslab
