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

#ifndef QONLINE_BOUNDS_HPP
#define QONLINE_BOUNDS_HPP

#include <map>
#include <string>
#include <vector>

namespace qonline {

/// eta T + ln d / eta.
double mwu_regret_bound(double eta, double horizon, double d);
/// 2 sqrt(T ln d), the minimum of mwu_regret_bound over eta.
double mwu_optimal_regret(double horizon, double d);
/// (3 C L sqrt(log_term) / (2 epsilon))^2: rounds after which a learner with
/// regret C L sqrt(T log_term) can no longer be making epsilon-mistakes.
double regret_to_mistake_rounds(double c, double lipschitz, double log_term, double epsilon);
/// ceil(9 L^2 ln K / epsilon^2).
long mixture_mistake_budget(long k, double lipschitz, double epsilon);
/// G ln C(n, 2) + 512 G ln(6 G / epsilon).
double log_covering_number(double n, double g, double epsilon);
/// 24 L sqrt(512 T G) (sqrt(ln 6G) + sqrt(pi)/2 + sqrt(2 ln n)).
double gate_complexity_regret(double horizon, double g, double n, double lipschitz);
/// (3 C L sqrt(G ln(G n)) / (2 epsilon))^2.
double gate_complexity_mistakes(double g, double n, double lipschitz, double epsilon, double c);
/// 2 sqrt(T n ln 4).
double pauli_regret(double horizon, double n);
/// C n / epsilon^2.
double sfat_bound(double n, double epsilon, double c = 1.0);
/// C sqrt(n) ln M ln^{3/2}(1 / (epsilon delta)) / epsilon^3.
double shadow_sample_count(double n, double m, double epsilon, double delta, double c = 1.0);

enum class BoundKind {
    kMwuRegret,
    kMwuOptimal,
    kMixtureMistakes,
    kLogCovering,
    kGateRegret,
    kGateMistakes,
    kPauliRegret,
    kSfat,
    kShadowSamples,
};

struct BoundQuery {
    BoundKind which = BoundKind::kMwuRegret;
    std::map<std::string, double> params;
};

struct BoundValue {
    double value = 0;
    /// False when the formula carries a constant the derivation leaves
    /// unspecified (set to the caller's C, default 1).
    bool asserted = true;
    std::string formula;
};

BoundValue eval_bound(const BoundQuery &q);

BoundKind parse_bound_kind(const std::string &name);
std::string bound_kind_name(BoundKind kind);
std::vector<BoundKind> all_bound_kinds();

}  // namespace qonline

#endif  // QONLINE_BOUNDS_HPP
