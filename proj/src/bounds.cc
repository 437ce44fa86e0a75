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

#include "qonline/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qonline {

namespace {

void require_positive(double v, const char *name) {
    if (!(v > 0)) {
        throw std::invalid_argument(std::string("bound parameter ") + name + " must be positive");
    }
}

double param(const BoundQuery &q, const std::string &name) {
    auto it = q.params.find(name);
    if (it == q.params.end()) {
        throw std::invalid_argument("bound " + bound_kind_name(q.which) + " is missing parameter " + name);
    }
    return it->second;
}

double param_or(const BoundQuery &q, const std::string &name, double fallback) {
    auto it = q.params.find(name);
    return it == q.params.end() ? fallback : it->second;
}

}  // namespace

double mwu_regret_bound(double eta, double horizon, double d) {
    require_positive(eta, "eta");
    require_positive(d, "d");
    return eta * horizon + std::log(d) / eta;
}

double mwu_optimal_regret(double horizon, double d) {
    require_positive(horizon, "T");
    require_positive(d, "d");
    return 2 * std::sqrt(horizon * std::log(d));
}

double regret_to_mistake_rounds(double c, double lipschitz, double log_term, double epsilon) {
    require_positive(epsilon, "epsilon");
    double v = 3 * c * lipschitz * std::sqrt(log_term) / (2 * epsilon);
    return v * v;
}

long mixture_mistake_budget(long k, double lipschitz, double epsilon) {
    require_positive(static_cast<double>(k), "K");
    require_positive(epsilon, "epsilon");
    double v = 9 * lipschitz * lipschitz * std::log(static_cast<double>(k)) / (epsilon * epsilon);
    return static_cast<long>(std::ceil(v - 1e-9));
}

double log_covering_number(double n, double g, double epsilon) {
    require_positive(g, "G");
    require_positive(epsilon, "epsilon");
    if (n < 2) {
        throw std::invalid_argument("bound parameter n must be at least 2");
    }
    return g * std::log(n * (n - 1) / 2) + 512 * g * std::log(6 * g / epsilon);
}

double gate_complexity_regret(double horizon, double g, double n, double lipschitz) {
    require_positive(horizon, "T");
    require_positive(g, "G");
    require_positive(n, "n");
    return 24 * lipschitz * std::sqrt(512 * horizon * g) *
           (std::sqrt(std::log(6 * g)) + std::sqrt(std::numbers::pi) / 2 + std::sqrt(2 * std::log(n)));
}

double gate_complexity_mistakes(double g, double n, double lipschitz, double epsilon, double c) {
    require_positive(g, "G");
    require_positive(n, "n");
    return regret_to_mistake_rounds(c, lipschitz, g * std::log(g * n), epsilon);
}

double pauli_regret(double horizon, double n) {
    require_positive(horizon, "T");
    require_positive(n, "n");
    return 2 * std::sqrt(horizon * n * std::log(4.0));
}

double sfat_bound(double n, double epsilon, double c) {
    require_positive(n, "n");
    require_positive(epsilon, "epsilon");
    return c * n / (epsilon * epsilon);
}

double shadow_sample_count(double n, double m, double epsilon, double delta, double c) {
    require_positive(n, "n");
    require_positive(m, "M");
    require_positive(epsilon, "epsilon");
    require_positive(delta, "delta");
    return c * std::sqrt(n) * std::log(m) * std::pow(std::log(1 / (epsilon * delta)), 1.5) /
           (epsilon * epsilon * epsilon);
}

BoundValue eval_bound(const BoundQuery &q) {
    BoundValue out;
    switch (q.which) {
        case BoundKind::kMwuRegret:
            out.value = mwu_regret_bound(param(q, "eta"), param(q, "T"), param(q, "d"));
            out.formula = "eta*T + ln(d)/eta";
            break;
        case BoundKind::kMwuOptimal:
            out.value = mwu_optimal_regret(param(q, "T"), param(q, "d"));
            out.formula = "2*sqrt(T*ln(d))";
            break;
        case BoundKind::kMixtureMistakes:
            out.value = static_cast<double>(
                mixture_mistake_budget(static_cast<long>(param(q, "K")), param_or(q, "L", 1), param(q, "epsilon")));
            out.formula = "ceil(9*L^2*ln(K)/epsilon^2)";
            break;
        case BoundKind::kLogCovering:
            out.value = log_covering_number(param(q, "n"), param(q, "G"), param(q, "epsilon"));
            out.formula = "G*ln(C(n,2)) + 512*G*ln(6G/epsilon)";
            break;
        case BoundKind::kGateRegret:
            out.value = gate_complexity_regret(param(q, "T"), param(q, "G"), param(q, "n"), param_or(q, "L", 1));
            out.formula = "24*L*sqrt(512*T*G)*(sqrt(ln(6G)) + sqrt(pi)/2 + sqrt(2*ln(n)))";
            break;
        case BoundKind::kGateMistakes: {
            // Default C: the gate-regret prefactor divided by sqrt(T G ln(G n)).
            double g = param(q, "G"), n = param(q, "n"), l = param_or(q, "L", 1);
            double c_default = 24 * std::sqrt(512.0) *
                               (std::sqrt(std::log(6 * g)) + std::sqrt(std::numbers::pi) / 2 +
                                std::sqrt(2 * std::log(n))) /
                               std::sqrt(std::log(g * n));
            double c = param_or(q, "C", c_default);
            out.value = gate_complexity_mistakes(g, n, l, param(q, "epsilon"), c);
            out.formula = "(3*C*L*sqrt(G*ln(G*n))/(2*epsilon))^2";
            break;
        }
        case BoundKind::kPauliRegret:
            out.value = pauli_regret(param(q, "T"), param(q, "n"));
            out.formula = "2*sqrt(T*n*ln(4))";
            break;
        case BoundKind::kSfat:
            out.value = sfat_bound(param(q, "n"), param(q, "epsilon"), param_or(q, "C", 1));
            out.formula = "C*n/epsilon^2";
            out.asserted = false;
            break;
        case BoundKind::kShadowSamples:
            out.value = shadow_sample_count(param(q, "n"), param(q, "M"), param(q, "epsilon"), param(q, "delta"),
                                            param_or(q, "C", 1));
            out.formula = "C*sqrt(n)*ln(M)*ln(1/(epsilon*delta))^1.5/epsilon^3";
            out.asserted = false;
            break;
    }
    return out;
}

BoundKind parse_bound_kind(const std::string &name) {
    for (BoundKind k : all_bound_kinds()) {
        if (bound_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown bound: " + name);
}

std::string bound_kind_name(BoundKind kind) {
    switch (kind) {
        case BoundKind::kMwuRegret:
            return "mwu-regret";
        case BoundKind::kMwuOptimal:
            return "mwu-optimal";
        case BoundKind::kMixtureMistakes:
            return "mixture-mistakes";
        case BoundKind::kLogCovering:
            return "log-covering";
        case BoundKind::kGateRegret:
            return "gate-regret";
        case BoundKind::kGateMistakes:
            return "gate-mistakes";
        case BoundKind::kPauliRegret:
            return "pauli-regret";
        case BoundKind::kSfat:
            return "sfat";
        case BoundKind::kShadowSamples:
            return "shadow-samples";
    }
    return "unknown";
}

std::vector<BoundKind> all_bound_kinds() {
    return {BoundKind::kMwuRegret,   BoundKind::kMwuOptimal,   BoundKind::kMixtureMistakes,
            BoundKind::kLogCovering, BoundKind::kGateRegret,   BoundKind::kGateMistakes,
            BoundKind::kPauliRegret, BoundKind::kSfat,         BoundKind::kShadowSamples};
}

}  // namespace qonline
