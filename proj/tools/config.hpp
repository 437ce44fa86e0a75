// Copyright 2026 The qonline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QONLINE_TOOLS_CONFIG_HPP
#define QONLINE_TOOLS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace qonline::tools {

using ConfigValue = std::variant<bool, double, std::string>;
/// Keys flattened as "section.key"; top-level keys have no prefix.
using ConfigTable = std::map<std::string, ConfigValue>;

/// Parses the subset of TOML used by experiment files: comments, [section]
/// headers, and `key = value` lines where value is a quoted string, a number,
/// or true/false.
ConfigTable parse_config(const std::string &text);
ConfigTable load_config_file(const std::string &path);

struct ExperimentConfig {
    std::string scenario;
    std::optional<uint64_t> seed;
    int n = 1;
    int r = 2;
    long rounds = 100;
    long k_hypotheses = 4;
    double epsilon = 0.2;
    /// "default" or a number.
    std::string eta = "default";
    std::string loss = "absolute";
    std::string mechanism = "naive";
    std::string mode = "agile";
    std::string wrapper = "mistake-driven";
    std::string channel = "pauli";
    std::string game = "all-zeros";
    long samples = 10000;
    long queries = 100;
    double delta = 0.05;
    long reads_per_round = 3;
    std::string out;
    std::string bound;
    std::map<std::string, double> bound_params;
};

/// Fills an ExperimentConfig from a parsed table; unknown keys are errors.
ExperimentConfig config_from_table(const ConfigTable &table);
/// Overwrites `base` with `flags` wherever a flag key is present.
ConfigTable merge_tables(ConfigTable base, const ConfigTable &flags);
/// Throws std::invalid_argument when required parameters are missing or out
/// of range.
void validate_config(const ExperimentConfig &c);

}  // namespace qonline::tools

#endif  // QONLINE_TOOLS_CONFIG_HPP
