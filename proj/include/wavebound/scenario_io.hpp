#pragma once

#include "wavebound/model.hpp"

#include <map>

namespace wavebound {

/// Value tree of the scenario configuration language (a TOML subset:
/// sections with dotted names, scalars, strings, arrays, inline tables and
/// arrays of inline tables).
struct ConfigValue {
    std::variant<double, bool, std::string, std::vector<ConfigValue>,
                 std::map<std::string, ConfigValue>>
        data;

    bool is_number() const { return std::holds_alternative<double>(data); }
    bool is_table() const { return std::holds_alternative<std::map<std::string, ConfigValue>>(data); }
    bool is_array() const { return std::holds_alternative<std::vector<ConfigValue>>(data); }
    double number() const;
    bool boolean() const;
    const std::string& str() const;
    const std::vector<ConfigValue>& array() const;
    const std::map<std::string, ConfigValue>& table() const;
};

using ConfigTable = std::map<std::string, ConfigValue>;

/// Parses the configuration text; throws SpecError with the line number on
/// syntax errors.
ConfigTable parse_config(const std::string& text);

/// Builds a Scenario from the parsed tree (does not validate physics; call
/// validate_scenario afterwards).
Scenario scenario_from_config(const ConfigTable& config);

/// Reads and parses a scenario file (does not validate).
Scenario load_scenario(const std::string& path);

/// Builds the time-dependent force of the named catalog:
/// kind = none | constant | step | impulse | sine.
ForceFn force_from_config(const ConfigTable& spec, int components);

}  // namespace wavebound
