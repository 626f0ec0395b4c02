#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tedfem/tedfem.h"

namespace tedcli {

using nlohmann::json;

/// Bad configuration file, override or parameter combination (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Every recognised key with its default. A user file may only contain keys
/// present here.
json default_config();

/// Merges `user` onto `base`; unknown keys and type mismatches throw.
void merge_checked(json& base, const json& user, const std::string& where = "");

/// Applies one `dotted.key=value` override. The value is read as JSON when it
/// parses, otherwise as a string.
void apply_override(json& cfg, const std::string& assignment);

/// Reads `path` (empty: defaults only) and applies overrides in order.
json load_config(const std::string& path, const std::vector<std::string>& overrides);

/// Problem description for the C API from a resolved configuration.
tedfem_problem_desc problem_desc(const json& cfg);

/// Sweep axis values in order. Throws ConfigError if empty or malformed.
std::vector<double> sweep_values(const json& cfg);

/// Sets the sweep parameter of `d` to `value`.
void apply_sweep_value(tedfem_problem_desc& d, const std::string& parameter, double value);

std::string mech_label(const tedfem_problem_desc& d);
std::string therm_label(const tedfem_problem_desc& d);

}  // namespace tedcli
