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

#ifndef QONLINE_TOOLS_RUNNER_HPP
#define QONLINE_TOOLS_RUNNER_HPP

#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"
#include "qonline/learners.hpp"
#include "qonline/transcript.hpp"

namespace qonline::tools {

/// One inequality reported in a run summary. Unasserted checks are printed
/// but never affect the exit status.
struct Check {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    bool asserted = true;
    bool pass = true;
};

Check less_equal(std::string name, double lhs, double rhs, bool asserted = true);

struct RunResult {
    std::string csv;
    nlohmann::json summary;
    std::vector<Check> checks;

    bool ok() const;
    /// Names of asserted checks that failed.
    std::vector<std::string> violations() const;
};

std::string format_double(double v);
std::string transcript_csv(const Transcript &tr);
nlohmann::json checks_json(const std::vector<Check> &checks);

/// Realizable online learning of a hidden Pauli channel with the
/// mistake-driven wrapper or plain MWU.
struct LearningRun {
    Transcript transcript;
    double regret = 0;
    std::vector<Check> checks;
};

LearningRun learn_pauli(int n, long rounds, double epsilon, uint64_t seed, const std::string &wrapper = "mistake-driven",
                        double eta = 0, LipschitzLoss loss = LipschitzLoss::absolute());
LearningRun learn_mixture(int n, long k, long rounds, double epsilon, uint64_t seed,
                          const std::string &wrapper = "mistake-driven", double eta = 0,
                          LipschitzLoss loss = LipschitzLoss::absolute());

/// Projected MMW over Choi states against a hidden unitary channel.
struct MirrorRun {
    Transcript transcript;
    double linear_regret = 0;
    double slack = 0;
    double max_residual = 0;
    std::vector<Check> checks;
};

MirrorRun learn_choi(int n, long rounds, double epsilon, MirrorMode mode, double eta, uint64_t seed,
                     LipschitzLoss loss = LipschitzLoss::absolute());

RunResult run(const ExperimentConfig &config);
void write_outputs(const RunResult &result, const std::string &dir);

}  // namespace qonline::tools

#endif  // QONLINE_TOOLS_RUNNER_HPP
