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

#include "gtest/gtest.h"

using namespace qonline;

TEST(eval_bound, mwu_optimal_regret_two_qubits) {
    const double eta = std::sqrt(std::log(16.0) / 1e4);
    const double plugged = eta * 1e4 + std::log(16.0) / eta;
    BoundValue v = eval_bound({BoundKind::kMwuOptimal, {{"T", 1e4}, {"d", 16}}});
    EXPECT_NEAR(v.value, plugged, 1e-9);
    EXPECT_NEAR(v.value, 333.0, 0.1);
    EXPECT_NEAR(eval_bound({BoundKind::kMwuRegret, {{"eta", eta}, {"T", 1e4}, {"d", 16}}}).value, plugged, 1e-9);
    EXPECT_TRUE(v.asserted);
}

TEST(eval_bound, mixture_mistake_budget) {
    EXPECT_EQ(eval_bound({BoundKind::kMixtureMistakes, {{"K", 64}, {"L", 1}, {"epsilon", 0.2}}}).value, 936);
    EXPECT_EQ(mixture_mistake_budget(64, 1, 0.2), static_cast<long>(std::ceil(9 * std::log(64.0) / 0.04)));
    EXPECT_EQ(mixture_mistake_budget(16, 1, 0.3), 278);
    // The general template with C = 2 reduces to the mixture budget.
    EXPECT_NEAR(regret_to_mistake_rounds(2, 1, std::log(64.0), 0.2), 9 * std::log(64.0) / 0.04, 1e-9);
}

TEST(eval_bound, log_covering_number) {
    BoundValue v = eval_bound({BoundKind::kLogCovering, {{"n", 2}, {"G", 1}, {"epsilon", 1}}});
    EXPECT_NEAR(v.value, 512 * std::log(6.0), 1e-9);
    EXPECT_NEAR(v.value, 917.4, 0.1);
    EXPECT_NEAR(log_covering_number(5, 3, 0.5), 3 * std::log(10.0) + 512 * 3 * std::log(36.0), 1e-9);
}

TEST(eval_bound, gate_complexity_chain) {
    const double t = 1000, g = 4, n = 8;
    const double expected = 24 * std::sqrt(512 * t * g) *
                            (std::sqrt(std::log(6 * g)) + std::sqrt(std::numbers::pi) / 2 + std::sqrt(2 * std::log(n)));
    EXPECT_NEAR(gate_complexity_regret(t, g, n, 1), expected, 1e-9 * expected);
    BoundValue m = eval_bound({BoundKind::kGateMistakes, {{"G", g}, {"n", n}, {"epsilon", 0.1}}});
    const double c = expected / std::sqrt(t * g * std::log(g * n));
    EXPECT_NEAR(m.value, std::pow(3 * c * std::sqrt(g * std::log(g * n)) / 0.2, 2), 1e-6 * m.value);
}

TEST(eval_bound, unasserted_constants_are_flagged) {
    EXPECT_FALSE(eval_bound({BoundKind::kSfat, {{"n", 3}, {"epsilon", 0.1}}}).asserted);
    EXPECT_FALSE(
        eval_bound({BoundKind::kShadowSamples, {{"n", 3}, {"M", 100}, {"epsilon", 0.1}, {"delta", 0.05}}}).asserted);
    EXPECT_TRUE(eval_bound({BoundKind::kPauliRegret, {{"T", 100}, {"n", 2}}}).asserted);
}

TEST(eval_bound, missing_parameter_is_an_error) {
    EXPECT_THROW(eval_bound({BoundKind::kMixtureMistakes, {{"K", 4}}}), std::invalid_argument);
    EXPECT_THROW(eval_bound({BoundKind::kMwuOptimal, {{"T", 10}, {"d", 0}}}), std::invalid_argument);
}

TEST(eval_bound, names_round_trip) {
    for (BoundKind k : all_bound_kinds()) {
        EXPECT_EQ(parse_bound_kind(bound_kind_name(k)), k);
    }
    EXPECT_THROW(parse_bound_kind("nope"), std::invalid_argument);
}

TEST(eval_bound, budgets_monotone_on_grid) {
    const std::vector<double> eps = {0.05, 0.1, 0.2, 0.4};
    for (double g : {1.0, 2.0, 4.0}) {
        for (double n : {2.0, 4.0, 8.0}) {
            for (std::size_t i = 0; i + 1 < eps.size(); i++) {
                const double lo = eps[i], hi = eps[i + 1];
                EXPECT_GE(gate_complexity_mistakes(g, n, 1, lo, 1), gate_complexity_mistakes(g, n, 1, hi, 1));
                EXPECT_GE(log_covering_number(n, g, lo), log_covering_number(n, g, hi));
                EXPECT_GE(sfat_bound(n, lo), sfat_bound(n, hi));
                EXPECT_GE(shadow_sample_count(n, 100, lo, 0.05), shadow_sample_count(n, 100, hi, 0.05));
            }
            EXPECT_LE(gate_complexity_mistakes(g, n, 1, 0.1, 1), gate_complexity_mistakes(2 * g, n, 1, 0.1, 1));
            EXPECT_LE(gate_complexity_mistakes(g, n, 1, 0.1, 1), gate_complexity_mistakes(g, 2 * n, 1, 0.1, 1));
            EXPECT_LE(shadow_sample_count(n, 100, 0.1, 0.05), shadow_sample_count(2 * n, 100, 0.1, 0.05));
            EXPECT_LE(shadow_sample_count(n, 100, 0.1, 0.05), shadow_sample_count(n, 1000, 0.1, 0.05));
        }
    }
    for (long k : {2L, 16L, 64L, 256L}) {
        for (std::size_t i = 0; i + 1 < eps.size(); i++) {
            EXPECT_GE(mixture_mistake_budget(k, 1, eps[i]), mixture_mistake_budget(k, 1, eps[i + 1]));
        }
        EXPECT_LE(mixture_mistake_budget(k, 1, 0.1), mixture_mistake_budget(4 * k, 1, 0.1));
    }
}
