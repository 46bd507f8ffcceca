#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tdoslab/domain.hpp"
#include "tdoslab/metrics.hpp"

namespace tdoslab {

struct MCConfig {
    double confidence = 0.99;
    double delta = 0.01;   // target CI half-width, absolute
    int min_runs = 30;
    int max_runs = 2000;
    std::uint64_t base_seed = 0;
    int jobs = 1;

    void validate() const;
};

struct MeasureStats {
    double mean = 0.0;
    double sample_std = 0.0;
    double halfwidth = 0.0;
};

struct MCResult {
    std::map<std::string, MeasureStats> measures;
    int runs_used = 0;
    bool converged = false;
};

/// One replica: given (index, derived seed), produce named measure values.
using ReplicaFn = std::function<std::map<std::string, double>(int, std::uint64_t)>;

/// Sequential Monte-Carlo with Student-t confidence intervals. Runs
/// min_runs replicas, then batches of 10 until every tracked measure's
/// half-width at `confidence` falls to `delta` or max_runs is hit
/// (converged = false). Replica i always gets seed
/// derive_seed(base_seed, "replica", i), so results are independent of
/// batch boundaries, execution order, and jobs.
MCResult monte_carlo(const ReplicaFn& replica, const std::vector<std::string>& tracked,
                     const MCConfig& mc);

extern const std::vector<std::string> kScenarioMeasures;
// {"avg_incall", "complete", "incomplete", "occupancy", "unsuccessful"}

std::map<std::string, double> measure_values(const MeasureSet& m);

/// Replicated scenario runs; tracked measures are kScenarioMeasures.
MCResult run_monte_carlo(const ScenarioConfig& cfg, const MCConfig& mc);

struct ScenarioGrid {
    std::vector<double> attacker_shares;
    std::vector<SelectionStrategy> strategies;
    std::vector<DurationKind> duration_models;
    ScenarioConfig base;

    void validate() const;
};

ScenarioGrid default_grid(ScenarioConfig base);

struct GridCell {
    double attacker_share = 0.0;
    SelectionStrategy strategy = SelectionStrategy::none;
    DurationKind duration_model = DurationKind::exponential;
    std::uint64_t seed = 0;
    MCResult result;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

/// One MCResult per (strategy, model, share) cell. Cell seeds derive from
/// the cell coordinates, so results do not depend on evaluation order; a
/// failing cell records its error and the rest still run.
std::vector<GridCell> run_grid(const ScenarioGrid& grid, const MCConfig& mc);

}  // namespace tdoslab
