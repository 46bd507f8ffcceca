#include <doctest.h>

#include <cmath>

#include "tdoslab/erlang.hpp"
#include "tdoslab/montecarlo.hpp"
#include "tdoslab/random.hpp"
#include "tdoslab/stats.hpp"

using namespace tdoslab;

namespace {

MCConfig quick_mc(std::uint64_t seed, int min_runs = 30, int max_runs = 200) {
    MCConfig mc;
    mc.base_seed = seed;
    mc.min_runs = min_runs;
    mc.max_runs = max_runs;
    return mc;
}

ScenarioConfig small_scenario(std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.total = 10.0;
    cfg.delay = 0.1;
    cfg.rate_total = size_rate(8, 2.0, SizingTarget::utilization(0.8));
    cfg.attacker_share = 0.5;
    cfg.duration_model = DurationKind::exponential;
    cfg.defense.k = 8;
    cfg.defense.t_mean = 2.0;
    cfg.defense.strategy = SelectionStrategy::roulette;
    cfg.defense.tournament_n = 4;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("zero-variance measures stop at min_runs with zero halfwidth") {
    const ReplicaFn replica = [](int, std::uint64_t) {
        return std::map<std::string, double>{{"m", 0.25}};
    };
    const auto res = monte_carlo(replica, {"m"}, quick_mc(1, 30, 500));
    CHECK(res.runs_used == 30);
    CHECK(res.converged);
    CHECK(res.measures.at("m").mean == 0.25);
    CHECK(res.measures.at("m").halfwidth == 0.0);
}

TEST_CASE("halfwidth follows the t-interval formula") {
    // replicas deliver deterministic, seed-independent values so the
    // statistics can be recomputed by hand here
    const ReplicaFn replica = [](int i, std::uint64_t) {
        return std::map<std::string, double>{{"m", static_cast<double>(i % 5)}};
    };
    for (int runs : {5, 30, 100}) {
        auto mc = quick_mc(0, runs, runs);
        mc.delta = 1e9;  // stop exactly at min_runs
        const auto res = monte_carlo(replica, {"m"}, mc);
        REQUIRE(res.runs_used == runs);

        std::vector<double> xs;
        for (int i = 0; i < runs; ++i) xs.push_back(static_cast<double>(i % 5));
        const double expect_hw = student_t_quantile(0.995, runs - 1) * sample_std(xs) /
                                 std::sqrt(static_cast<double>(runs));
        CHECK(res.measures.at("m").mean == doctest::Approx(mean(xs)).epsilon(1e-12));
        CHECK(res.measures.at("m").halfwidth == doctest::Approx(expect_hw).epsilon(1e-9));
    }
}

TEST_CASE("hitting max_runs reports non-convergence instead of truncating silently") {
    const ReplicaFn replica = [](int i, std::uint64_t seed) {
        RandomStream rs(seed);
        return std::map<std::string, double>{{"m", rs.uniform_double()}};
    };
    auto mc = quick_mc(3, 10, 40);
    mc.delta = 1e-9;  // unreachable
    const auto res = monte_carlo(replica, {"m"}, mc);
    CHECK(res.runs_used == 40);
    CHECK_FALSE(res.converged);
}

TEST_CASE("replica seeds depend on index only, so order and jobs do not matter") {
    const ReplicaFn replica = [](int, std::uint64_t seed) {
        RandomStream rs(seed);
        return std::map<std::string, double>{{"m", rs.uniform_double()}};
    };
    auto serial = quick_mc(77, 40, 40);
    auto parallel = serial;
    parallel.jobs = 4;
    const auto a = monte_carlo(replica, {"m"}, serial);
    const auto b = monte_carlo(replica, {"m"}, parallel);
    CHECK(a.runs_used == b.runs_used);
    CHECK(a.measures.at("m").mean == b.measures.at("m").mean);
    CHECK(a.measures.at("m").halfwidth == b.measures.at("m").halfwidth);
}

TEST_CASE("scenario monte carlo replays and tracks every quality measure") {
    const auto cfg = small_scenario(5);
    auto mc = quick_mc(5, 10, 10);
    mc.delta = 1e9;
    const auto a = run_monte_carlo(cfg, mc);
    const auto b = run_monte_carlo(cfg, mc);
    for (const auto& key : kScenarioMeasures) {
        CHECK(a.measures.at(key).mean == b.measures.at(key).mean);
        CHECK(a.measures.at(key).mean >= 0.0);
        CHECK(a.measures.at(key).mean <= 1.0);
    }
}

TEST_CASE("coverage of the 99% interval on a bernoulli measure") {
    // smoke-scale version of the acceptance meta-test
    int covered = 0;
    const int trials = 50;
    for (int trial = 0; trial < trials; ++trial) {
        const ReplicaFn replica = [](int, std::uint64_t seed) {
            RandomStream rs(seed);
            return std::map<std::string, double>{{"m", rs.bernoulli(0.5) ? 1.0 : 0.0}};
        };
        auto mc = quick_mc(derive_seed(31337, "trial", static_cast<std::uint64_t>(trial)), 200, 200);
        mc.delta = 1e9;
        const auto res = monte_carlo(replica, {"m"}, mc);
        const auto& m = res.measures.at("m");
        if (std::fabs(m.mean - 0.5) <= m.halfwidth) ++covered;
    }
    CHECK(covered >= 46);  // ~99% nominal; generous floor for 50 trials
}

TEST_CASE("grids cover the axes and isolate per-cell failures") {
    ScenarioGrid grid = default_grid(small_scenario(6));
    grid.attacker_shares = {0.2, 0.8};
    grid.strategies = {SelectionStrategy::none, SelectionStrategy::tournament};
    grid.duration_models = {DurationKind::lognormal};

    auto mc = quick_mc(6, 5, 5);
    mc.delta = 1e9;
    const auto cells = run_grid(grid, mc);
    REQUIRE(cells.size() == 4);
    for (const auto& c : cells) {
        CHECK(c.ok());
        CHECK(c.result.runs_used == 5);
    }

    SUBCASE("single-cell grid equals a direct monte carlo run") {
        ScenarioGrid g1 = grid;
        g1.attacker_shares = {0.8};
        g1.strategies = {SelectionStrategy::tournament};
        const auto one = run_grid(g1, mc);
        REQUIRE(one.size() == 1);
        MCConfig cell_mc = mc;
        cell_mc.base_seed = one[0].seed;
        ScenarioConfig cfg = g1.base;
        cfg.attacker_share = 0.8;
        cfg.defense.strategy = SelectionStrategy::tournament;
        cfg.duration_model = DurationKind::lognormal;
        const auto direct = run_monte_carlo(cfg, cell_mc);
        CHECK(one[0].result.measures.at("complete").mean ==
              direct.measures.at("complete").mean);
    }

    SUBCASE("an invalid cell reports its error and the rest still run") {
        ScenarioGrid bad = grid;
        bad.base.defense.tournament_n = 99;  // > k, rejected when tournament is selected
        const auto cells2 = run_grid(bad, mc);
        REQUIRE(cells2.size() == 4);
        int ok = 0, failed = 0;
        for (const auto& c : cells2) c.ok() ? ++ok : ++failed;
        CHECK(ok == 2);       // the no-defense cells ignore tournament_n
        CHECK(failed == 2);   // both tournament cells report the bad n
    }
}
