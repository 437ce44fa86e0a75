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

#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "runner.hpp"

namespace {

using qonline::tools::ConfigTable;

struct Flags {
    std::string config;
    std::optional<uint64_t> seed;
    std::string out;
    std::optional<long> rounds;
    std::optional<double> epsilon;
    std::string eta;
    std::string scenario;
    std::vector<std::string> sets;
    std::string which;
    std::vector<std::string> params;
};

// `key=value` pairs go through the config parser so values get the same typing
// rules as in a file.
void add_assignments(ConfigTable &table, const std::vector<std::string> &items, const std::string &prefix) {
    for (const auto &item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected key=value, got '" + item + "'");
        }
        ConfigTable one = qonline::tools::parse_config(item.substr(0, eq) + " = " + item.substr(eq + 1));
        for (auto &[k, v] : one) {
            table[prefix + k] = v;
        }
    }
}

void add_common(CLI::App *cmd, Flags &f) {
    cmd->add_option("--config", f.config, "TOML experiment file");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--out", f.out, "Output directory for transcript.csv and summary.json");
    cmd->add_option("--set", f.sets, "Extra parameter as key=value (repeatable)");
}

int execute(const std::string &default_scenario, const Flags &f) {
    ConfigTable base;
    if (!f.config.empty()) {
        base = qonline::tools::load_config_file(f.config);
    }
    ConfigTable flags;
    if (!default_scenario.empty() && !base.count("scenario")) {
        flags["scenario"] = default_scenario;
    }
    if (!f.scenario.empty()) flags["scenario"] = f.scenario;
    if (f.seed) flags["seed"] = static_cast<double>(*f.seed);
    if (!f.out.empty()) flags["out"] = f.out;
    if (f.rounds) flags["T"] = static_cast<double>(*f.rounds);
    if (f.epsilon) flags["epsilon"] = *f.epsilon;
    if (!f.eta.empty()) flags["eta"] = f.eta;
    if (!f.which.empty()) flags["bound"] = f.which;
    add_assignments(flags, f.sets, "");
    add_assignments(flags, f.params, "params.");
    const auto config = qonline::tools::config_from_table(qonline::tools::merge_tables(base, flags));
    qonline::tools::validate_config(config);

    const auto result = qonline::tools::run(config);
    if (!config.out.empty()) {
        qonline::tools::write_outputs(result, config.out);
    }
    std::cout << result.summary.dump(2) << '\n';
    if (!result.ok()) {
        for (const auto &name : result.violations()) {
            std::cerr << "violated: " << name << '\n';
        }
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Online learning of quantum channels and combs: experiment runner"};
    app.require_subcommand(1);
    Flags f;

    auto *learn = app.add_subcommand("learn", "Run a learning game against a realizable adversary");
    add_common(learn, f);
    learn->add_option("--scenario", f.scenario, "learn-pauli, learn-mixture or learn-choi-mmw")
        ->check(CLI::IsMember({"learn-pauli", "learn-mixture", "learn-choi-mmw"}));
    learn->add_option("--rounds", f.rounds, "Number of rounds T");
    learn->add_option("--epsilon", f.epsilon, "Accuracy epsilon");
    learn->add_option("--eta", f.eta, "Learning rate or 'default'");

    auto *shadow = app.add_subcommand("shadow", "Answer channel queries from Bell samples");
    add_common(shadow, f);
    shadow->add_option("--epsilon", f.epsilon, "Accuracy epsilon");

    auto *comb = app.add_subcommand("comb", "Answer tester queries on a multi-step comb");
    add_common(comb, f);
    comb->add_option("--epsilon", f.epsilon, "Accuracy epsilon");

    auto *adversary = app.add_subcommand("adversary", "Play a hardness game");
    add_common(adversary, f);
    adversary->add_option("--rounds", f.rounds, "Unused; the game sets its own length");
    adversary->add_option("--epsilon", f.epsilon, "Accuracy epsilon");

    auto *bounds = app.add_subcommand("bounds", "Evaluate a closed-form bound as JSON");
    bounds->add_option("--config", f.config, "TOML experiment file");
    bounds->add_option("--which", f.which, "Bound name");
    bounds->add_option("--param", f.params, "Parameter as name=value (repeatable)");

    CLI11_PARSE(app, argc, argv);

    std::string scenario;
    if (learn->parsed()) {
        scenario = "learn-pauli";
    } else if (shadow->parsed()) {
        scenario = "shadow";
    } else if (comb->parsed()) {
        scenario = "comb-shadow";
    } else if (adversary->parsed()) {
        scenario = "adversary-game";
    } else {
        scenario = "bounds";
    }
    try {
        return execute(scenario, f);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
