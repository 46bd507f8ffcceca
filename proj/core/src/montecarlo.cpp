#include "tdoslab/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "tdoslab/csv.hpp"
#include "tdoslab/engine.hpp"
#include "tdoslab/random.hpp"
#include "tdoslab/stats.hpp"

namespace tdoslab {

void MCConfig::validate() const {
    if (!(confidence > 0 && confidence < 1))
        throw ConfigError("mc.confidence must lie in (0, 1)");
    if (!(delta > 0)) throw ConfigError("mc.delta must be > 0");
    if (min_runs < 2) throw ConfigError("mc.min_runs must be >= 2");
    if (max_runs < min_runs) throw ConfigError("mc.max_runs must be >= mc.min_runs");
    if (jobs < 1) throw ConfigError("mc.jobs must be >= 1");
}

namespace {

constexpr int kBatch = 10;

std::vector<std::map<std::string, double>> run_replicas(const ReplicaFn& replica, int first,
                                                        int count, std::uint64_t base_seed,
                                                        int jobs) {
    std::vector<std::map<std::string, double>> out(static_cast<std::size_t>(count));
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] =
                replica(first + i, derive_seed(base_seed, "replica",
                                               static_cast<std::uint64_t>(first + i)));
        return out;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            out[static_cast<std::size_t>(i)] =
                replica(first + i, derive_seed(base_seed, "replica",
                                               static_cast<std::uint64_t>(first + i)));
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::min(jobs, count);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace

MCResult monte_carlo(const ReplicaFn& replica, const std::vector<std::string>& tracked,
                     const MCConfig& mc) {
    mc.validate();
    std::map<std::string, std::vector<double>> samples;
    for (const auto& key : tracked) samples[key];

    MCResult result;
    int n = 0;
    bool converged = false;
    while (n < mc.max_runs && !converged) {
        const int want = n == 0 ? mc.min_runs : std::min(kBatch, mc.max_runs - n);
        auto batch = run_replicas(replica, n, want, mc.base_seed, mc.jobs);
        for (auto& values : batch) {
            for (const auto& key : tracked) {
                const auto it = values.find(key);
                samples[key].push_back(it != values.end()
                                           ? it->second
                                           : std::numeric_limits<double>::quiet_NaN());
            }
        }
        n += want;

        const double t =
            student_t_quantile(0.5 * (1.0 + mc.confidence), static_cast<double>(n - 1));
        converged = true;
        result.measures.clear();
        for (const auto& key : tracked) {
            const auto& xs = samples[key];
            MeasureStats stats;
            stats.mean = mean(xs);
            stats.sample_std = sample_std(xs);
            stats.halfwidth = t * stats.sample_std / std::sqrt(static_cast<double>(n));
            if (!(stats.halfwidth <= mc.delta)) converged = false;
            result.measures[key] = stats;
        }
    }
    result.runs_used = n;
    result.converged = converged;
    return result;
}

const std::vector<std::string> kScenarioMeasures = {
    "avg_incall", "complete", "incomplete", "occupancy", "unsuccessful",
};

std::map<std::string, double> measure_values(const MeasureSet& m) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    return {
        {"avg_incall", m.avg_incall},
        {"complete", m.complete.value_or(nan)},
        {"incomplete", m.incomplete.value_or(nan)},
        {"occupancy", m.mean_attacker_occupancy},
        {"unsuccessful", m.unsuccessful.value_or(nan)},
    };
}

MCResult run_monte_carlo(const ScenarioConfig& cfg, const MCConfig& mc) {
    cfg.validate();
    ReplicaFn replica = [&cfg](int, std::uint64_t seed) {
        ScenarioConfig replica_cfg = cfg;
        replica_cfg.seed = seed;
        return measure_values(compute_measures(run_scenario(replica_cfg)));
    };
    return monte_carlo(replica, kScenarioMeasures, mc);
}

void ScenarioGrid::validate() const {
    if (attacker_shares.empty() || strategies.empty() || duration_models.empty())
        throw ConfigError("grid axes must be non-empty");
    base.validate();
}

ScenarioGrid default_grid(ScenarioConfig base) {
    ScenarioGrid g;
    g.attacker_shares = {0.17, 0.33, 0.50, 0.67, 0.83};
    g.strategies = {SelectionStrategy::none, SelectionStrategy::uniform,
                    SelectionStrategy::roulette, SelectionStrategy::tournament};
    g.duration_models = {DurationKind::exponential, DurationKind::lognormal};
    g.base = std::move(base);
    return g;
}

std::vector<GridCell> run_grid(const ScenarioGrid& grid, const MCConfig& mc) {
    grid.validate();
    mc.validate();
    std::vector<GridCell> cells;
    for (SelectionStrategy strategy : grid.strategies) {
        for (DurationKind model : grid.duration_models) {
            for (double share : grid.attacker_shares) {
                GridCell cell;
                cell.attacker_share = share;
                cell.strategy = strategy;
                cell.duration_model = model;
                const std::string key = to_string(strategy) + "/" + to_string(model) + "/" +
                                        format_double(share);
                cell.seed = derive_seed(mc.base_seed, key, 0);
                try {
                    ScenarioConfig cfg = grid.base;
                    cfg.attacker_share = share;
                    cfg.defense.strategy = strategy;
                    cfg.duration_model = model;
                    MCConfig cell_mc = mc;
                    cell_mc.base_seed = cell.seed;
                    cell.result = run_monte_carlo(cfg, cell_mc);
                } catch (const std::exception& e) {
                    cell.error = e.what();
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

}  // namespace tdoslab
