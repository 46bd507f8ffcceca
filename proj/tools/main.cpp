#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdoslab/config.hpp"
#include "tdoslab/csv.hpp"
#include "tdoslab/engine.hpp"
#include "tdoslab/erlang.hpp"
#include "tdoslab/io.hpp"
#include "tdoslab/metrics.hpp"
#include "tdoslab/montecarlo.hpp"
#include "tdoslab/stats.hpp"
#include "tdoslab/strategy.hpp"
#include "tdoslab/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tdoslab;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> jobs;
    std::optional<double> delta;
    std::optional<double> confidence;
    bool strict = false;
};

// precedence: --seed flag, then TDOSLAB_SEED, then the config file
void apply_seed_overrides(LoadedConfig& cfg, const CommonOpts& opts) {
    std::optional<std::uint64_t> seed = opts.seed_flag;
    if (!seed) {
        if (const char* env = std::getenv("TDOSLAB_SEED")) {
            try {
                seed = std::stoull(env);
            } catch (const std::exception&) {
                throw ConfigError("TDOSLAB_SEED is not an unsigned integer: " +
                                  std::string(env));
            }
        }
    }
    if (seed) {
        cfg.scenario.seed = *seed;
        cfg.mc.base_seed = *seed;
        if (cfg.grid) cfg.grid->base.seed = *seed;
    }
    if (opts.jobs) cfg.mc.jobs = *opts.jobs;
    if (opts.delta) cfg.mc.delta = *opts.delta;
    if (opts.confidence) cfg.mc.confidence = *opts.confidence;
}

json measures_json(const MeasureSet& m, const ScenarioConfig& sc, const RunTrace& trace) {
    json counts = {
        {"censored", m.counts.censored},       {"complete", m.counts.complete},
        {"honest", m.counts.honest},           {"incall", m.counts.incall},
        {"incomplete", m.counts.incomplete},   {"unsuccessful", m.counts.unsuccessful},
    };
    json measures = {
        {"avg_incall", m.avg_incall},
        {"avg_incall_vacuous", m.avg_incall_vacuous},
        {"complete", m.complete ? json(*m.complete) : json(nullptr)},
        {"incomplete", m.incomplete ? json(*m.incomplete) : json(nullptr)},
        {"mean_attacker_occupancy", m.mean_attacker_occupancy},
        {"total_time_in_call", m.total_time_in_call},
        {"unsuccessful", m.unsuccessful ? json(*m.unsuccessful) : json(nullptr)},
    };
    json metadata = {
        {"Ts", sc.defense.ts},
        {"alpha", sc.defense.alpha},
        {"attacker_share", sc.attacker_share},
        {"delay", sc.delay},
        {"duration_model", to_string(sc.duration_model)},
        {"k", sc.defense.k},
        {"p_in", sc.defense.p_in},
        {"p_wait", sc.defense.p_wait},
        {"rate_total", sc.rate_total},
        {"rng", trace.rng_algorithm},
        {"seed", sc.seed},
        {"sigma", sc.lognormal_sigma},
        {"strategy", to_string(sc.defense.strategy)},
        {"t_M", sc.defense.t_mean},
        {"total", sc.total},
        {"tournament_n", sc.defense.tournament_n},
    };
    return json{{"counts", counts}, {"measures", measures}, {"metadata", metadata}};
}

std::string occupancy_csv(const RunTrace& trace) {
    std::string out = "time,attacker_fraction\n";
    for (const auto& [t, frac] : occupancy_series(trace)) {
        out += format_double(t);
        out += ',';
        out += format_double(frac);
        out += '\n';
    }
    return out;
}

int cmd_run(const CommonOpts& opts) {
    LoadedConfig cfg = load_config_file(opts.config_path);
    apply_seed_overrides(cfg, opts);

    const RunTrace trace = run_scenario(cfg.scenario);
    const MeasureSet m = compute_measures(trace);

    fs::create_directories(opts.out_dir);
    write_file_atomic((fs::path(opts.out_dir) / "measures.json").string(),
                      measures_json(m, cfg.scenario, trace).dump(2) + "\n");
    write_file_atomic((fs::path(opts.out_dir) / "occupancy.csv").string(),
                      occupancy_csv(trace));
    return 0;
}

std::string sanitize_status(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

int cmd_sweep(const CommonOpts& opts) {
    LoadedConfig cfg = load_config_file(opts.config_path);
    apply_seed_overrides(cfg, opts);
    const ScenarioGrid grid = cfg.grid ? *cfg.grid : default_grid(cfg.scenario);

    const auto cells = run_grid(grid, cfg.mc);

    std::vector<RunRow> rows;
    rows.reserve(cells.size());
    bool all_converged = true;
    for (const auto& cell : cells) {
        RunRow r;
        r.strategy = to_string(cell.strategy);
        r.duration_model = to_string(cell.duration_model);
        r.attacker_share = cell.attacker_share;
        r.scenario_id =
            r.strategy + "-" + r.duration_model + "-s" + format_double(cell.attacker_share);
        r.seed = cell.seed;
        if (cell.ok()) {
            const auto& ms = cell.result.measures;
            r.complete_mean = ms.at("complete").mean;
            r.complete_hw = ms.at("complete").halfwidth;
            r.incomplete_mean = ms.at("incomplete").mean;
            r.incomplete_hw = ms.at("incomplete").halfwidth;
            r.unsuccessful_mean = ms.at("unsuccessful").mean;
            r.unsuccessful_hw = ms.at("unsuccessful").halfwidth;
            r.avg_incall_mean = ms.at("avg_incall").mean;
            r.avg_incall_hw = ms.at("avg_incall").halfwidth;
            r.occupancy_mean = ms.at("occupancy").mean;
            r.runs = cell.result.runs_used;
            r.converged = cell.result.converged;
            if (!cell.result.converged) all_converged = false;
        } else {
            r.status = sanitize_status("error: " + cell.error);
        }
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end(), [](const RunRow& a, const RunRow& b) {
        if (a.strategy != b.strategy) return a.strategy < b.strategy;
        if (a.duration_model != b.duration_model) return a.duration_model < b.duration_model;
        return a.attacker_share < b.attacker_share;
    });

    fs::create_directories(opts.out_dir);
    write_file_atomic((fs::path(opts.out_dir) / "results.csv").string(), emit_csv(rows));

    if (opts.strict && !all_converged) {
        std::cerr << "sweep: one or more cells did not converge\n";
        return 3;
    }
    return 0;
}

std::vector<std::pair<double, double>> parse_occupancy_csv(const std::string& text,
                                                           const std::string& path) {
    std::vector<std::pair<double, double>> series;
    std::size_t pos = 0, lineno = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != "time,attacker_fraction")
                throw ConfigError(path + ": unexpected occupancy header '" + line + "'");
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError(path + " row " + std::to_string(lineno) + ": expected two columns");
        series.emplace_back(parse_double(line.substr(0, comma)),
                            parse_double(line.substr(comma + 1)));
    }
    return series;
}

int cmd_report(const std::string& csv_path, const std::vector<std::string>& occupancy_paths,
               const std::string& out_dir) {
    const auto rows = parse_csv(read_file(csv_path));
    std::map<std::pair<std::string, std::string>, std::vector<RunRow>> groups;
    for (const auto& r : rows)
        if (r.status == "ok") groups[{r.strategy, r.duration_model}].push_back(r);
    if (groups.empty() && occupancy_paths.empty())
        throw ConfigError(csv_path + ": no plottable rows");

    // build everything before writing anything
    std::vector<std::pair<std::string, std::string>> outputs;
    for (const auto& [key, group] : groups) {
        const auto& [strategy, model] = key;
        outputs.emplace_back(
            "availability_" + strategy + "_" + model + ".svg",
            availability_chart_svg("availability - " + strategy + ", " + model + " durations",
                                   group));
        outputs.emplace_back(
            "avg_incall_" + strategy + "_" + model + ".svg",
            avg_incall_chart_svg("interrupted-call talk time - " + strategy + ", " + model +
                                     " durations",
                                 group));
    }
    for (const auto& path : occupancy_paths) {
        const auto series = parse_occupancy_csv(read_file(path), path);
        const std::string stem = fs::path(path).stem().string();
        outputs.emplace_back("occupancy_" + stem + ".svg",
                             occupancy_chart_svg("attacker occupancy - " + stem, series));
    }

    fs::create_directories(out_dir);
    for (const auto& [name, content] : outputs)
        write_file_atomic((fs::path(out_dir) / name).string(), content);
    return 0;
}

int cmd_size(int k, double t_mean, std::optional<double> utilization,
             std::optional<double> blocking) {
    SizingTarget target = utilization ? SizingTarget::utilization(*utilization)
                                      : SizingTarget::blocking(*blocking);
    const double rate = size_rate(k, t_mean, target);
    std::cout << "rate_per_unit = " << format_double(rate) << "\n";
    std::cout << "rate_per_60_units = " << format_double(rate * 60.0) << "\n";
    std::cout << "offered_erlangs = " << format_double(rate * t_mean) << "\n";
    std::cout << "blocking_at_rate = " << format_double(erlang_b(rate * t_mean, k)) << "\n";
    return 0;
}

int cmd_selftest() {
    int failures = 0;
    const auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    {
        Scheduler s;
        s.insert(2.0, ActorId{ActorKind::client, 0}, MsgKind::poll);
        s.insert(1.0, ActorId{ActorKind::client, 1}, MsgKind::poll);
        s.insert(1.0, ActorId{ActorKind::client, 2}, MsgKind::poll);
        const auto a = s.tick(), b = s.tick(), c = s.tick();
        check(a && a->target.index == 1 && b && b->target.index == 2 && c &&
                  c->target.index == 0 && s.now() == 2.0,
              "scheduler ordering and FIFO ties");
    }
    {
        RandomStream rs(101);
        const auto m = DurationModel::exponential(5.0);
        double sum = 0.0;
        const int n = 100'000;
        for (int i = 0; i < n; ++i) sum += sample_duration(rs, m);
        check(std::fabs(sum / n - 5.0) < 3.0 * 5.0 / std::sqrt(n), "exponential sampler mean");
    }
    {
        RandomStream rs(102);
        const auto m = DurationModel::lognormal(5.0, 0.8);
        double sum = 0.0;
        const int n = 100'000;
        const double sd = 5.0 * std::sqrt(std::exp(0.64) - 1.0);
        for (int i = 0; i < n; ++i) sum += sample_duration(rs, m);
        check(std::fabs(sum / n - 5.0) < 3.0 * sd / std::sqrt(n), "lognormal sampler mean");
    }
    {
        RandomStream rs(103);
        const std::vector<double> w{2, 3, 1, 6};
        std::vector<int> counts(4, 0);
        const int draws = 100'000;
        for (int i = 0; i < draws; ++i) ++counts[weighted_pick(w, rs)];
        const std::vector<double> expect{1.0 / 6, 1.0 / 4, 1.0 / 12, 1.0 / 2};
        bool ok = true;
        for (int i = 0; i < 4; ++i)
            ok = ok && std::fabs(counts[i] / double(draws) - expect[i]) < 0.01;
        check(ok, "roulette frequencies on weights (2,3,1,6)");
    }
    {
        DefenseParams p;
        p.k = 4;
        p.strategy = SelectionStrategy::tournament;
        p.tournament_n = 1;
        ServerBuffer buf(4);
        for (std::uint32_t i = 0; i < 4; ++i)
            buf.append(BufferEntry{ActorId{ActorKind::client, i}, CallPhase::wait, {}});
        RandomStream rs(104);
        std::vector<int> counts(4, 0);
        const int draws = 10'000;
        for (int i = 0; i < draws; ++i) ++counts[select_tournament(buf, 0.0, p, rs)];
        double chi2 = 0.0;
        for (int i = 0; i < 4; ++i)
            chi2 += (counts[i] - 2500.0) * (counts[i] - 2500.0) / 2500.0;
        check(chi2 < 11.3449, "1-tournament indistinguishable from uniform");
    }
    {
        const bool ok = erlang_b(1.0, 1) == 0.5 &&
                        std::fabs(erlang_b(2.0, 2) - 0.4) < 1e-12 &&
                        erlang_b(7.0, 0) == 1.0 &&
                        size_rate(200, 160.0, SizingTarget::utilization(0.8)) == 1.0;
        check(ok, "erlang recursion and sizing");
    }
    {
        const bool ok = std::fabs(student_t_quantile(0.995, 29) - 2.756386) < 1e-4 &&
                        std::fabs(student_t_quantile(0.995, 4) - 4.604095) < 1e-4;
        check(ok, "student-t quantiles");
    }
    {
        ScenarioConfig cfg;
        cfg.total = 20.0;
        cfg.rate_total = 3.84;
        cfg.attacker_share = 0.5;
        cfg.duration_model = DurationKind::lognormal;
        cfg.defense.strategy = SelectionStrategy::roulette;
        cfg.seed = 105;
        const auto a = compute_measures(run_scenario(cfg));
        const auto b = compute_measures(run_scenario(cfg));
        check(a.complete == b.complete && a.counts.honest == b.counts.honest &&
                  a.mean_attacker_occupancy == b.mean_attacker_occupancy,
              "replayed run is bit-identical");
    }
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tdoslab - coordinated-call attack and selective-defense simulation lab"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string report_csv;
    std::vector<std::string> occupancy_paths;
    int size_k = 0;
    double size_t_mean = 0.0;
    std::optional<double> size_util, size_blocking;

    auto add_common = [&](CLI::App* cmd, bool with_mc) {
        cmd->add_option("--config", opts.config_path, "scenario config file")->required();
        cmd->add_option("--seed", opts.seed_flag, "seed override (beats TDOSLAB_SEED and config)");
        cmd->add_option("--out", opts.out_dir, "output directory");
        if (with_mc) {
            cmd->add_option("--jobs", opts.jobs, "parallel replicas");
            cmd->add_option("--delta", opts.delta, "CI half-width target");
            cmd->add_option("--confidence", opts.confidence, "CI confidence level");
            cmd->add_flag("--strict", opts.strict, "exit 3 when any cell fails to converge");
        }
    };

    auto* run = app.add_subcommand("run", "single scenario run: measures + occupancy series");
    add_common(run, false);

    auto* sweep = app.add_subcommand("sweep", "scenario grid to results.csv");
    add_common(sweep, true);

    auto* report = app.add_subcommand("report", "render SVG charts from a results CSV");
    report->add_option("csv", report_csv, "results.csv from sweep")->required();
    report->add_option("--occupancy", occupancy_paths, "occupancy.csv files to chart");
    report->add_option("--out", opts.out_dir, "output directory");

    auto* size = app.add_subcommand("size", "erlang traffic sizing");
    size->add_option("--k", size_k, "server capacity (simultaneous calls)")->required();
    size->add_option("--t-mean", size_t_mean, "mean call duration")->required();
    auto* util_opt = size->add_option("--utilization", size_util, "target offered utilization");
    size->add_option("--blocking", size_blocking, "target blocking probability")
        ->excludes(util_opt);

    auto* selftest = app.add_subcommand("selftest", "run the built-in property checks");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (report->parsed()) return cmd_report(report_csv, occupancy_paths, opts.out_dir);
        if (size->parsed()) {
            if (!size_util && !size_blocking) {
                std::cerr << "size: one of --utilization or --blocking is required\n";
                return 1;
            }
            return cmd_size(size_k, size_t_mean, size_util, size_blocking);
        }
        return cmd_selftest();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
