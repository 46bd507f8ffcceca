#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tdoslab/montecarlo.hpp"

namespace tdoslab {

/// A parsed scenario file: [scenario] and [defense] are the single-run
/// configuration, [mc] the replication policy, and an optional [grid]
/// section spans a sweep.
struct LoadedConfig {
    ScenarioConfig scenario;
    MCConfig mc;
    std::optional<ScenarioGrid> grid;
};

/// Parses the key-value config format. Sections in brackets, `key = value`
/// lines, `#` comments. Unknown keys and missing required keys raise
/// ConfigError naming the offending `section.key`.
LoadedConfig parse_config(std::string_view text);

LoadedConfig load_config_file(const std::string& path);

}  // namespace tdoslab
