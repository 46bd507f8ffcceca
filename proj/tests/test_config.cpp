#include <doctest.h>

#include <string>

#include "tdoslab/config.hpp"

using namespace tdoslab;

namespace {

const char* kFullConfig = R"(# paper-scale scenario
[scenario]
total = 40
delay = 0.1
rate_utilization = 0.8
attacker_share = 0.83
duration_model = lognormal
sigma = 0.8
arrivals = poisson
seed = 42
retry_rejected = false
max_retries = 0

[defense]
strategy = tournament
k = 24
t_M = 5
Ts = 0.1
p_wait = 8
p_in = 2
alpha = 1.89
tournament_n = 12

[mc]
confidence = 0.99
delta = 0.01
min_runs = 30
max_runs = 2000
)";

std::string without_line(const std::string& text, const std::string& needle) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        if (line.find(needle) == std::string::npos) {
            out += line;
            out += '\n';
        }
        pos = eol + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("a full config parses into the expected scenario") {
    const auto loaded = parse_config(kFullConfig);
    const auto& sc = loaded.scenario;
    CHECK(sc.total == 40.0);
    CHECK(sc.delay == 0.1);
    CHECK(sc.rate_total == doctest::Approx(3.84).epsilon(1e-12));  // sized from utilization
    CHECK(sc.attacker_share == 0.83);
    CHECK(sc.duration_model == DurationKind::lognormal);
    CHECK(sc.lognormal_sigma == 0.8);
    CHECK(sc.seed == 42);
    CHECK(sc.defense.k == 24);
    CHECK(sc.defense.t_mean == 5.0);
    CHECK(sc.defense.ts == 0.1);
    CHECK(sc.defense.strategy == SelectionStrategy::tournament);
    CHECK(sc.defense.tournament_n == 12);
    CHECK(loaded.mc.confidence == 0.99);
    CHECK(loaded.mc.delta == 0.01);
    CHECK(loaded.mc.min_runs == 30);
    CHECK(loaded.mc.max_runs == 2000);
    CHECK(loaded.mc.base_seed == 42);  // defaults to the scenario seed
    CHECK_FALSE(loaded.grid.has_value());
}

TEST_CASE("missing t_M names the offending key") {
    const std::string text = without_line(kFullConfig, "t_M");
    CHECK_THROWS_WITH_AS(parse_config(text), "defense.t_M required", ConfigError);
}

TEST_CASE("config validation failures") {
    SUBCASE("unknown keys are rejected") {
        const std::string text = std::string(kFullConfig) + "\n[defense]\n";
        CHECK_THROWS_AS(parse_config(std::string(kFullConfig) + "typo_key = 3\n"), ConfigError);
    }
    SUBCASE("p_wait must exceed p_in") {
        std::string text = kFullConfig;
        text.replace(text.find("p_wait = 8"), 10, "p_wait = 1");
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
    SUBCASE("rate_total and rate_utilization are mutually exclusive") {
        const std::string text = std::string(kFullConfig) + "\n[scenario]\n";
        CHECK_THROWS_AS(parse_config(without_line(kFullConfig, "rate_utilization")), ConfigError);
    }
    SUBCASE("tournament_n must fit the buffer") {
        std::string text = kFullConfig;
        text.replace(text.find("tournament_n = 12"), 17, "tournament_n = 25");
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
    SUBCASE("malformed numbers are diagnosed") {
        std::string text = kFullConfig;
        text.replace(text.find("total = 40"), 10, "total = 4o");
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
}

TEST_CASE("tournament_n defaults to k/2") {
    const std::string text = without_line(kFullConfig, "tournament_n");
    const auto loaded = parse_config(text);
    CHECK(loaded.scenario.defense.tournament_n == 12);
}

TEST_CASE("grid section supplies the sweep axes with paper defaults") {
    const std::string text = std::string(kFullConfig) + "\n[grid]\n";
    const auto loaded = parse_config(text);
    REQUIRE(loaded.grid.has_value());
    CHECK(loaded.grid->attacker_shares == std::vector<double>{0.17, 0.33, 0.50, 0.67, 0.83});
    CHECK(loaded.grid->strategies.size() == 4);
    CHECK(loaded.grid->duration_models.size() == 2);

    const std::string custom = std::string(kFullConfig) +
                               "\n[grid]\nattacker_shares = 0.5\nstrategies = none, roulette\n"
                               "duration_models = exponential\n";
    const auto loaded2 = parse_config(custom);
    REQUIRE(loaded2.grid.has_value());
    CHECK(loaded2.grid->attacker_shares == std::vector<double>{0.5});
    CHECK(loaded2.grid->strategies ==
          std::vector<SelectionStrategy>{SelectionStrategy::none, SelectionStrategy::roulette});
    CHECK(loaded2.grid->duration_models == std::vector<DurationKind>{DurationKind::exponential});
}
