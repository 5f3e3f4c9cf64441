#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windsmc/sim.hpp"

namespace windsmc {

struct ScenarioOverride {
    std::string key;
    std::string value;
};

// Splits "key=value" (first '='); ConfigError on malformed input.
ScenarioOverride parse_override(const std::string& text);

// Parses a flat "key = value" scenario file with dotted section prefixes
// (plant, wind, controller, smc, pid, afdo, sim). '#' starts a comment.
// Overrides are applied onto the parsed keys before construction and must
// name known keys; an explicit seed wins over sim.seed. Unknown keys,
// duplicates, missing required keys, and invariant violations raise
// ConfigError naming the key. The wind profile is resolved before returning.
Scenario parse_scenario(const std::filesystem::path& path,
                        const std::vector<ScenarioOverride>& overrides = {},
                        std::optional<std::uint64_t> seed_override = std::nullopt);

} // namespace windsmc
