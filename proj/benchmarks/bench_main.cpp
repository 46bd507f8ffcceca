#include <benchmark/benchmark.h>

#include "tdoslab/engine.hpp"
#include "tdoslab/erlang.hpp"
#include "tdoslab/metrics.hpp"
#include "tdoslab/scheduler.hpp"
#include "tdoslab/strategy.hpp"

using namespace tdoslab;

namespace {

ScenarioConfig paper_scenario(SelectionStrategy strategy) {
    ScenarioConfig cfg;
    cfg.total = 40.0;
    cfg.delay = 0.1;
    cfg.rate_total = size_rate(24, 5.0, SizingTarget::utilization(0.8));
    cfg.attacker_share = 0.83;
    cfg.duration_model = DurationKind::lognormal;
    cfg.defense.k = 24;
    cfg.defense.ts = 0.1;
    cfg.defense.strategy = strategy;
    cfg.defense.tournament_n = 12;
    cfg.seed = 7;
    return cfg;
}

ServerBuffer full_buffer(int k) {
    ServerBuffer buf(k);
    for (int i = 0; i < k; ++i) {
        if (i % 3 == 0)
            buf.append(BufferEntry{ActorId{ActorKind::client, static_cast<std::uint32_t>(i)},
                                   CallPhase::wait,
                                   {}});
        else
            buf.append(BufferEntry{ActorId{ActorKind::attacker, static_cast<std::uint32_t>(i)},
                                   CallPhase::in_call, 0.5 * i});
    }
    return buf;
}

void BM_SchedulerInsertTick(benchmark::State& state) {
    const auto n = state.range(0);
    RandomStream rs(1);
    for (auto _ : state) {
        Scheduler s;
        for (std::int64_t i = 0; i < n; ++i)
            s.insert(rs.uniform_double() * 100.0, ActorId{ActorKind::client, 0}, MsgKind::poll);
        while (auto e = s.tick()) benchmark::DoNotOptimize(*e);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SchedulerInsertTick)->Arg(1 << 10)->Arg(1 << 14);

void BM_SelectRoulette(benchmark::State& state) {
    const auto buf = full_buffer(24);
    DefenseParams p;
    p.k = 24;
    RandomStream rs(2);
    for (auto _ : state) benchmark::DoNotOptimize(select_roulette(buf, 20.0, p, rs));
}
BENCHMARK(BM_SelectRoulette);

void BM_SelectTournament(benchmark::State& state) {
    const auto buf = full_buffer(24);
    DefenseParams p;
    p.k = 24;
    p.tournament_n = 12;
    RandomStream rs(3);
    for (auto _ : state) benchmark::DoNotOptimize(select_tournament(buf, 20.0, p, rs));
}
BENCHMARK(BM_SelectTournament);

void BM_RunScenarioNoDefense(benchmark::State& state) {
    const auto cfg = paper_scenario(SelectionStrategy::none);
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg));
}
BENCHMARK(BM_RunScenarioNoDefense);

void BM_RunScenarioTournament(benchmark::State& state) {
    const auto cfg = paper_scenario(SelectionStrategy::tournament);
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg));
}
BENCHMARK(BM_RunScenarioTournament);

void BM_ComputeMeasures(benchmark::State& state) {
    const auto trace = run_scenario(paper_scenario(SelectionStrategy::roulette));
    for (auto _ : state) benchmark::DoNotOptimize(compute_measures(trace));
}
BENCHMARK(BM_ComputeMeasures);

void BM_ErlangB(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(erlang_b(160.0, 200));
}
BENCHMARK(BM_ErlangB);

}  // namespace

BENCHMARK_MAIN();
