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

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "runner.hpp"

using namespace qonline;
using namespace qonline::tools;

namespace {

ExperimentConfig config_of(const std::string &text) { return config_from_table(parse_config(text)); }

std::vector<std::vector<std::string>> csv_rows(const std::string &csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream cell_in(line);
        std::string cell;
        while (std::getline(cell_in, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string &args, const std::filesystem::path &stderr_path) {
    const std::string cmd = std::string(QONLINE_CLI_PATH) + " " + args + " > /dev/null 2> " + stderr_path.string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("qonline_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(config, parses_sections_strings_numbers_and_bools) {
    ConfigTable t = parse_config(
        "# experiment\n"
        "scenario = \"learn-pauli\"  # trailing comment\n"
        "seed = 1_000\n"
        "flag = true\n"
        "[params]\n"
        "K = 16\n");
    EXPECT_EQ(std::get<std::string>(t.at("scenario")), "learn-pauli");
    EXPECT_EQ(std::get<double>(t.at("seed")), 1000.0);
    EXPECT_TRUE(std::get<bool>(t.at("flag")));
    EXPECT_EQ(std::get<double>(t.at("params.K")), 16.0);
}

TEST(config, rejects_malformed_input) {
    EXPECT_THROW(parse_config("seed = 1\nseed = 2\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("[params\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("just words\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("x = \"open\n"), std::invalid_argument);
    EXPECT_THROW(config_of("scenario = \"learn-pauli\"\nseed = 1\ncolour = 3\n"), std::invalid_argument);
    EXPECT_THROW(config_of("seed = 1.5\n"), std::invalid_argument);
}

TEST(config, seed_is_mandatory) {
    EXPECT_THROW(validate_config(config_of("scenario = \"learn-pauli\"\n")), std::invalid_argument);
    EXPECT_NO_THROW(validate_config(config_of("scenario = \"learn-pauli\"\nseed = 0\n")));
}

TEST(config, validates_scenario_parameters) {
    EXPECT_THROW(validate_config(config_of("scenario = \"teleport\"\nseed = 1\n")), std::invalid_argument);
    EXPECT_THROW(validate_config(config_of("scenario = \"learn-pauli\"\nseed = 1\nepsilon = 1.5\n")),
                 std::invalid_argument);
    EXPECT_THROW(validate_config(config_of("scenario = \"learn-choi-mmw\"\nseed = 1\nn = 3\n")),
                 std::invalid_argument);
    EXPECT_THROW(validate_config(config_of("scenario = \"comb-shadow\"\nseed = 1\nn = 2\nr = 3\n")),
                 std::invalid_argument);
    EXPECT_THROW(validate_config(config_of("scenario = \"bounds\"\n")), std::invalid_argument);
    EXPECT_NO_THROW(validate_config(config_of("scenario = \"bounds\"\nbound = \"mwu-optimal\"\n")));
}

TEST(config, flags_override_file) {
    ConfigTable file = parse_config("scenario = \"learn-pauli\"\nseed = 1\nT = 50\n");
    ConfigTable flags;
    flags["T"] = 20.0;
    ExperimentConfig c = config_from_table(merge_tables(file, flags));
    EXPECT_EQ(c.rounds, 20);
    EXPECT_EQ(*c.seed, 1u);
}

TEST(run, learn_pauli_is_deterministic) {
    ExperimentConfig c = config_of("scenario = \"learn-pauli\"\nn = 1\nT = 100\nseed = 7\n");
    RunResult a = run(c), b = run(c);
    EXPECT_EQ(a.csv, b.csv);
    EXPECT_EQ(a.summary.dump(), b.summary.dump());
    EXPECT_EQ(csv_rows(a.csv).size(), 100u);
    c.seed = 8;
    EXPECT_NE(run(c).csv, a.csv);
}

TEST(run, bounds_scenario_reports_eval_bound) {
    RunResult r = run(config_of("scenario = \"bounds\"\nbound = \"mixture-mistakes\"\n"
                                "[params]\nK = 16\nL = 1\nepsilon = 0.3\n"));
    EXPECT_EQ(r.summary.at("bound"), "mixture-mistakes");
    EXPECT_EQ(r.summary.at("value").get<double>(), 278.0);
    EXPECT_TRUE(r.summary.at("asserted").get<bool>());
    EXPECT_TRUE(r.csv.empty());
}

TEST(run, single_hypothesis_mixture_makes_no_mistakes_after_round_one) {
    for (uint64_t seed : {1u, 2u, 3u}) {
        ExperimentConfig c = config_of("scenario = \"learn-mixture\"\nK = 1\nT = 60\n");
        c.seed = seed;
        auto rows = csv_rows(run(c).csv);
        ASSERT_EQ(rows.size(), 60u);
        for (std::size_t t = 1; t < rows.size(); t++) {
            EXPECT_EQ(rows[t][5], "0") << "round " << t + 1;
        }
    }
}

TEST(run, summary_agrees_with_rows) {
    for (const char *wrapper : {"mistake-driven", "plain"}) {
        ExperimentConfig c = config_of("scenario = \"learn-mixture\"\nn = 1\nK = 5\nT = 200\nseed = 4\n");
        c.wrapper = wrapper;
        RunResult r = run(c);
        auto rows = csv_rows(r.csv);
        long mistakes = 0;
        for (const auto &row : rows) {
            mistakes += row[5] == "1";
        }
        EXPECT_EQ(r.summary.at("mistakes").get<long>(), mistakes);
        const double regret = std::stod(rows.back()[6]);
        EXPECT_EQ(r.summary.at("cumulative_regret").get<double>(), regret);
        const double bound = r.summary.at("bound").at("value").get<double>();
        const double lhs = std::string(wrapper) == "plain" ? regret : static_cast<double>(mistakes);
        EXPECT_EQ(r.summary.at("bound").at("satisfied").get<bool>(), lhs <= bound);
        EXPECT_EQ(r.summary.at("checks")[0].at("result"), lhs <= bound ? "PASS" : "FAIL");
    }
}

TEST(run, replay_reproduces_predictions) {
    LearningRun a = learn_pauli(2, 50, 0.2, 11), b = learn_pauli(2, 50, 0.2, 11);
    ASSERT_EQ(a.transcript.rows.size(), b.transcript.rows.size());
    for (std::size_t t = 0; t < a.transcript.rows.size(); t++) {
        EXPECT_EQ(a.transcript.rows[t].prediction, b.transcript.rows[t].prediction);
        EXPECT_EQ(a.transcript.rows[t].challenge_digest, b.transcript.rows[t].challenge_digest);
    }
}

TEST(run, choi_learner_keeps_constraints) {
    ExperimentConfig c = config_of("scenario = \"learn-choi-mmw\"\nn = 1\nT = 50\nseed = 2\nmode = \"lazy\"\n");
    RunResult r = run(c);
    EXPECT_TRUE(r.ok());
    EXPECT_LE(r.summary.at("max_constraint_residual").get<double>(), 1e-8);
}

TEST(run, large_twirl_slack_is_reported_as_violation) {
    ExperimentConfig c = config_of("scenario = \"shadow\"\nseed = 1\nchannel = \"depolarized-hadamard\"\nM = 10\n");
    RunResult r = run(c);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violations().front(), "twirl slack < epsilon");
}

TEST(cli, identical_files_across_runs) {
    auto dir = scratch("determinism");
    ASSERT_EQ(run_cli("learn --scenario learn-pauli --seed 7 --rounds 100 --out " + (dir / "a").string(), dir / "e"), 0);
    ASSERT_EQ(run_cli("learn --scenario learn-pauli --seed 7 --rounds 100 --out " + (dir / "b").string(), dir / "e"), 0);
    EXPECT_EQ(slurp(dir / "a" / "transcript.csv"), slurp(dir / "b" / "transcript.csv"));
    EXPECT_EQ(slurp(dir / "a" / "summary.json"), slurp(dir / "b" / "summary.json"));
    EXPECT_FALSE(slurp(dir / "a" / "transcript.csv").empty());
}

TEST(cli, config_file_and_flag_override) {
    auto dir = scratch("config");
    std::ofstream(dir / "exp.toml") << "scenario = \"learn-pauli\"\nseed = 3\nT = 40\n";
    ASSERT_EQ(run_cli("learn --config " + (dir / "exp.toml").string() + " --rounds 15 --out " + (dir / "o").string(),
                      dir / "e"),
              0);
    EXPECT_EQ(csv_rows(slurp(dir / "o" / "transcript.csv")).size(), 15u);
}

TEST(cli, exit_codes) {
    auto dir = scratch("exit");
    EXPECT_EQ(run_cli("learn --rounds 5", dir / "e"), 2);
    EXPECT_NE(slurp(dir / "e").find("seed"), std::string::npos);
    EXPECT_EQ(run_cli("bounds --which mwu-optimal --param T=10000 --param d=16", dir / "e"), 0);
    EXPECT_EQ(run_cli("shadow --seed 1 --set channel=\\\"depolarized-hadamard\\\" --set M=5", dir / "e"), 1);
    EXPECT_NE(slurp(dir / "e").find("twirl slack < epsilon"), std::string::npos);
}
