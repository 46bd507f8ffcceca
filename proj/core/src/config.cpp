#include "tdoslab/config.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "tdoslab/erlang.hpp"
#include "tdoslab/io.hpp"

namespace tdoslab {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

struct RawConfig {
    // section -> key -> value, plus consumption tracking for unknown-key checks
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::set<std::string> consumed;

    bool has(const std::string& section, const std::string& key) const {
        auto s = sections.find(section);
        return s != sections.end() && s->second.count(key) > 0;
    }

    std::string take(const std::string& section, const std::string& key) {
        consumed.insert(section + "." + key);
        return sections.at(section).at(key);
    }
};

RawConfig tokenize(std::string_view text) {
    RawConfig raw;
    std::string section;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            raw.sections[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!raw.sections[section].emplace(key, value).second)
            throw ConfigError("duplicate key " + section + "." + key);
    }
    return raw;
}

[[noreturn]] void bad_value(const std::string& where, const std::string& value) {
    throw ConfigError(where + ": cannot parse '" + value + "'");
}

double get_double(RawConfig& raw, const std::string& section, const std::string& key) {
    const std::string v = raw.take(section, key);
    double out{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) bad_value(section + "." + key, v);
    return out;
}

std::int64_t get_int(RawConfig& raw, const std::string& section, const std::string& key) {
    const std::string v = raw.take(section, key);
    std::int64_t out{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) bad_value(section + "." + key, v);
    return out;
}

std::uint64_t get_u64(RawConfig& raw, const std::string& section, const std::string& key) {
    const std::string v = raw.take(section, key);
    std::uint64_t out{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) bad_value(section + "." + key, v);
    return out;
}

bool get_bool(RawConfig& raw, const std::string& section, const std::string& key) {
    const std::string v = raw.take(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad_value(section + "." + key, v);
}

void require(const RawConfig& raw, const std::string& section, const std::string& key) {
    if (!raw.has(section, key)) throw ConfigError(section + "." + key + " required");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto t = trim(item);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

}  // namespace

LoadedConfig parse_config(std::string_view text) {
    RawConfig raw = tokenize(text);
    LoadedConfig out;
    ScenarioConfig& sc = out.scenario;

    // [defense] first: rate sizing may need k and t_M.
    DefenseParams& dp = sc.defense;
    require(raw, "defense", "k");
    require(raw, "defense", "t_M");
    require(raw, "defense", "strategy");
    dp.k = static_cast<int>(get_int(raw, "defense", "k"));
    dp.t_mean = get_double(raw, "defense", "t_M");
    dp.strategy = strategy_from_string(raw.take("defense", "strategy"));
    if (raw.has("defense", "Ts")) dp.ts = get_double(raw, "defense", "Ts");
    if (raw.has("defense", "p_wait")) dp.p_wait = get_double(raw, "defense", "p_wait");
    if (raw.has("defense", "p_in")) dp.p_in = get_double(raw, "defense", "p_in");
    if (raw.has("defense", "alpha")) dp.alpha = get_double(raw, "defense", "alpha");
    dp.tournament_n = raw.has("defense", "tournament_n")
                          ? static_cast<int>(get_int(raw, "defense", "tournament_n"))
                          : std::max(1, dp.k / 2);

    require(raw, "scenario", "total");
    require(raw, "scenario", "attacker_share");
    require(raw, "scenario", "duration_model");
    sc.total = get_double(raw, "scenario", "total");
    sc.attacker_share = get_double(raw, "scenario", "attacker_share");
    sc.duration_model = duration_kind_from_string(raw.take("scenario", "duration_model"));
    if (raw.has("scenario", "delay")) sc.delay = get_double(raw, "scenario", "delay");
    if (raw.has("scenario", "sigma")) sc.lognormal_sigma = get_double(raw, "scenario", "sigma");
    if (raw.has("scenario", "seed")) sc.seed = get_u64(raw, "scenario", "seed");
    if (raw.has("scenario", "retry_rejected"))
        sc.retry_rejected = get_bool(raw, "scenario", "retry_rejected");
    if (raw.has("scenario", "max_retries"))
        sc.max_retries = static_cast<int>(get_int(raw, "scenario", "max_retries"));
    if (raw.has("scenario", "arrivals")) {
        const std::string v = raw.take("scenario", "arrivals");
        if (v == "poisson") sc.arrivals = ArrivalProcess::poisson;
        else if (v == "deterministic") sc.arrivals = ArrivalProcess::deterministic;
        else bad_value("scenario.arrivals", v);
    }

    const bool has_rate = raw.has("scenario", "rate_total");
    const bool has_util = raw.has("scenario", "rate_utilization");
    if (has_rate == has_util)
        throw ConfigError(
            "scenario requires exactly one of rate_total and rate_utilization");
    sc.rate_total = has_rate ? get_double(raw, "scenario", "rate_total")
                             : size_rate(dp.k, dp.t_mean,
                                         SizingTarget::utilization(
                                             get_double(raw, "scenario", "rate_utilization")));

    MCConfig& mc = out.mc;
    mc.base_seed = sc.seed;
    if (raw.has("mc", "confidence")) mc.confidence = get_double(raw, "mc", "confidence");
    if (raw.has("mc", "delta")) mc.delta = get_double(raw, "mc", "delta");
    if (raw.has("mc", "min_runs")) mc.min_runs = static_cast<int>(get_int(raw, "mc", "min_runs"));
    if (raw.has("mc", "max_runs")) mc.max_runs = static_cast<int>(get_int(raw, "mc", "max_runs"));
    if (raw.has("mc", "base_seed")) mc.base_seed = get_u64(raw, "mc", "base_seed");

    if (raw.sections.count("grid") > 0) {
        ScenarioGrid grid = default_grid(sc);
        if (raw.has("grid", "attacker_shares")) {
            grid.attacker_shares.clear();
            for (const auto& s : split_list(raw.take("grid", "attacker_shares"))) {
                double v{};
                const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
                if (ec != std::errc{} || p != s.data() + s.size())
                    bad_value("grid.attacker_shares", s);
                grid.attacker_shares.push_back(v);
            }
        }
        if (raw.has("grid", "strategies")) {
            grid.strategies.clear();
            for (const auto& s : split_list(raw.take("grid", "strategies")))
                grid.strategies.push_back(strategy_from_string(s));
        }
        if (raw.has("grid", "duration_models")) {
            grid.duration_models.clear();
            for (const auto& s : split_list(raw.take("grid", "duration_models")))
                grid.duration_models.push_back(duration_kind_from_string(s));
        }
        out.grid = std::move(grid);
    }

    for (const auto& [section, keys] : raw.sections)
        for (const auto& [key, value] : keys)
            if (raw.consumed.count(section + "." + key) == 0)
                throw ConfigError("unknown key " + section + "." + key);

    sc.validate();
    mc.validate();
    if (out.grid) out.grid->validate();
    return out;
}

LoadedConfig load_config_file(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text);
}

}  // namespace tdoslab
