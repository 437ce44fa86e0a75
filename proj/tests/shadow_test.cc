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

#include "qonline/shadow.hpp"

#include "gtest/gtest.h"

#include "qonline/random.hpp"

using namespace qonline;

namespace {

TestOperator random_product_test(Eigen::Index d, Rng &rng) {
    return product_test(random_density(d, rng), random_effect(d, rng));
}

Channel depolarized_hadamard() {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    return mix_channels({0.9, 0.1}, {unitary_channel(h), depolarizing_channel(1)});
}

}  // namespace

TEST(bell_sample, identity_channel_always_gives_zero_label) {
    Rng rng(81, "test/bell");
    for (std::size_t s : bell_samples(identity_channel(2), 10000, rng)) {
        ASSERT_EQ(s, 0u);
    }
    EXPECT_EQ(bell_sample(identity_channel(1), rng), PauliIndex({0}, {0}));
}

TEST(bell_sample, distribution_is_bell_overlap_of_choi_state) {
    Rng rng(82, "test/bell");
    for (int n = 1; n <= 2; n++) {
        Channel ch = random_channel(n, n, 3, rng);
        const double d = static_cast<double>(ch.dim_in());
        Matrix state = choi_of(ch) / d;
        RealVector p = bell_distribution(ch);
        for (std::size_t k = 0; k < num_paulis(n); k++) {
            EXPECT_NEAR(p(k), trace_product(bell_projector(PauliIndex::from_flat(n, k)), state).real(), 1e-10);
        }
        EXPECT_LE((p - pauli_twirl(ch)).cwiseAbs().maxCoeff(), 1e-10);
    }
    EXPECT_THROW(bell_distribution(random_channel(1, 2, 2, rng)), std::invalid_argument);
}

TEST(bell_sample, pauli_channel_frequencies_within_hoeffding_radius) {
    Rng rng(83, "test/bell");
    RealVector p = random_distribution(16, rng);
    const std::size_t k = 100000;
    RealVector freq = empirical_distribution(bell_samples(pauli_channel(p), k, rng), 16);
    EXPECT_LE((freq - p).cwiseAbs().maxCoeff(), std::sqrt(std::log(2 * 16 / 0.01) / (2.0 * k)));
}

TEST(bell_sample, arbitrary_channel_matches_twirl_chi_square) {
    Rng rng(84, "test/bell");
    Channel ch = random_channel(2, 2, 2, rng);
    RealVector p = pauli_twirl(ch);
    const std::size_t k = 100000;
    RealVector freq = empirical_distribution(bell_samples(ch, k, rng), 16);
    double chi2 = 0;
    for (Eigen::Index j = 0; j < 16; j++) {
        if (p(j) > 1e-12) {
            chi2 += k * std::pow(freq(j) - p(j), 2) / p(j);
        }
    }
    // 15 degrees of freedom; 50 is far in the upper tail.
    EXPECT_LT(chi2, 50.0);
}

TEST(shadow_answer, zero_query_answers_zero) {
    Rng rng(85, "test/answer");
    QueryBudget budget{1000, 0.1, 0.05, 1, Mechanism::kNaive};
    ShadowAnswerer ans(bell_samples(depolarizing_channel(1), 1000, rng), 4, budget, 1);
    TestOperator zero;
    zero.op = Matrix::Zero(4, 4);
    EXPECT_EQ(ans.answer(zero), 0.0);
}

TEST(shadow_answer, identity_channel_pure_test_answers_one) {
    Rng rng(86, "test/answer");
    QueryBudget budget{2000, 0.1, 0.05, 1, Mechanism::kNaive};
    ShadowAnswerer ans(bell_samples(identity_channel(1), 2000, rng), 4, budget, 1);
    Matrix rho = random_density(2, rng, 1);
    EXPECT_NEAR(ans.answer(product_test(rho, rho)), 1.0, 0.05);
}

TEST(shadow_answer, exact_distribution_gives_born_values) {
    Rng rng(87, "test/answer");
    RealVector p = random_distribution(16, rng);
    Channel ch = pauli_channel(p);
    for (int i = 0; i < 50; i++) {
        TestOperator e = random_product_test(4, rng);
        EXPECT_NEAR(exact_answer(p, bell_coefficients(e.op)), born_value(e, ch), 1e-10);
    }
}

TEST(shadow_answer, naive_non_adaptive_accuracy) {
    Rng setup(88, "test/answer");
    RealVector p = random_distribution(16, setup);
    Channel ch = pauli_channel(p);
    std::vector<RealVector> queries;
    std::vector<double> truth;
    for (int i = 0; i < 1000; i++) {
        TestOperator e = random_product_test(4, setup);
        queries.push_back(bell_coefficients(e.op));
        truth.push_back(born_value(e, ch));
    }
    for (int trial = 0; trial < 3; trial++) {
        Rng rng(trial, "test/answer/trial");
        QueryBudget budget{50000, 0.05, 0.05, 1000, Mechanism::kNaive};
        ShadowAnswerer ans(bell_samples(ch, 50000, rng), 16, budget, trial);
        double worst = 0;
        for (std::size_t i = 0; i < queries.size(); i++) {
            worst = std::max(worst, std::abs(ans.answer_coefficients(queries[i]) - truth[i]));
        }
        EXPECT_LE(worst, 0.05);
    }
}

TEST(shadow_answer, split_noise_within_advertised_tolerance) {
    Rng setup(89, "test/split");
    RealVector p = random_distribution(4, setup);
    Channel ch = pauli_channel(p);
    TestOperator e = random_product_test(2, setup);
    const double truth = born_value(e, ch);
    int failures = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; trial++) {
        Rng rng(trial, "test/split/trial");
        QueryBudget budget{10000, 0.1, 0.05, 1, Mechanism::kSplitNoise};
        ShadowAnswerer ans(bell_samples(ch, 10000, rng), 4, budget, trial);
        EXPECT_EQ(ans.blocks(), 100u);
        failures += std::abs(ans.answer(e) - truth) > ans.advertised_tolerance();
    }
    EXPECT_LE(failures, static_cast<int>(0.05 * trials));
}

TEST(shadow_answer, split_noise_runs_out_of_blocks) {
    Rng rng(90, "test/split");
    QueryBudget budget{16, 0.1, 0.05, 4, Mechanism::kSplitNoise};
    ShadowAnswerer ans(bell_samples(identity_channel(1), 16, rng), 4, budget, 1);
    RealVector e = RealVector::Constant(4, 0.5);
    for (int i = 0; i < 4; i++) {
        ans.answer_coefficients(e);
    }
    EXPECT_THROW(ans.answer_coefficients(e), std::runtime_error);
}

TEST(twirled_shadow, pauli_channel_has_zero_slack) {
    Rng rng(91, "test/twirled");
    RealVector p = random_distribution(4, rng);
    Channel ch = pauli_channel(p);
    std::vector<TestOperator> queries = {random_product_test(2, rng), random_product_test(2, rng)};
    QueryBudget budget{5000, 0.1, 0.05, 2, Mechanism::kNaive};
    TwirledShadowResult res = twirled_shadow(ch, queries, budget, 7);
    EXPECT_NEAR(res.slack, 0.0, 1e-12);
    Rng same(7, "shadow/bell");
    ShadowAnswerer direct(bell_samples(ch, 5000, same), 4, budget, 7);
    for (std::size_t i = 0; i < queries.size(); i++) {
        EXPECT_EQ(res.answers[i], direct.answer(queries[i]));
    }
}

TEST(twirled_shadow, depolarized_hadamard_slack_and_accuracy) {
    Channel ch = depolarized_hadamard();
    Matrix c = choi_of(ch);
    const double slack = trace_norm(Matrix(c - choi_of(pauli_channel(pauli_twirl(ch))))) / 2;
    EXPECT_NEAR(slack, 0.9, 1e-10);
    EXPECT_NEAR(twirl_slack(ch), slack, 1e-12);

    Rng rng(92, "test/twirled");
    std::vector<TestOperator> queries;
    for (int i = 0; i < 100; i++) {
        queries.push_back(random_product_test(2, rng));
    }
    QueryBudget budget{50000, 0.05, 0.05, 100, Mechanism::kNaive};
    EXPECT_THROW(twirled_shadow(ch, queries, budget, 3), std::invalid_argument);
    TwirledShadowResult res = twirled_shadow(ch, queries, budget, 3, true);
    Channel twirled = pauli_channel(pauli_twirl(ch));
    for (std::size_t i = 0; i < queries.size(); i++) {
        EXPECT_LE(std::abs(res.answers[i] - born_value(queries[i], twirled)), budget.epsilon);
        EXPECT_LE(std::abs(res.answers[i] - born_value(queries[i], ch)), budget.epsilon + res.slack);
    }
}

TEST(twirled_shadow, twirling_removes_slack) {
    Channel ch = depolarized_hadamard();
    EXPECT_NEAR(twirl_slack(pauli_channel(pauli_twirl(ch))), 0.0, 1e-12);
}

TEST(comb_shadow, identity_comb_answers_exactly) {
    Rng rng(93, "test/comb");
    Comb comb = comb_from_independent_channels({identity_channel(1), identity_channel(1)});
    std::vector<Tester> queries;
    for (int i = 0; i < 5; i++) {
        Matrix r1 = random_density(2, rng, 1), r2 = random_density(2, rng, 1);
        queries.push_back(product_tester({r1, r2}, {r1, r2}));
    }
    QueryBudget budget{200, 0.1, 0.05, 5, Mechanism::kNaive};
    CombShadowResult res = comb_shadow(comb, queries, budget, 1);
    EXPECT_NEAR(res.slack, 0.0, 1e-12);
    for (std::size_t i = 0; i < queries.size(); i++) {
        EXPECT_NEAR(res.answers[i], tester_value(queries[i], comb), 1e-10);
    }
}

TEST(comb_shadow, product_of_pauli_channels) {
    Rng rng(94, "test/comb");
    RealVector p = random_distribution(4, rng), q = random_distribution(4, rng);
    Comb comb = comb_from_independent_channels({pauli_channel(p), pauli_channel(q)});
    std::vector<Tester> queries;
    for (int i = 0; i < 50; i++) {
        queries.push_back(product_tester({random_density(2, rng), random_density(2, rng)},
                                         {random_effect(2, rng), random_effect(2, rng)}));
    }
    QueryBudget budget{50000, 0.05, 0.05, 50, Mechanism::kNaive};
    CombShadowResult res = comb_shadow(comb, queries, budget, 2);
    for (std::size_t i = 0; i < queries.size(); i++) {
        EXPECT_LE(std::abs(res.answers[i] - tester_value(queries[i], comb)), budget.epsilon);
    }
}

TEST(comb_shadow, single_step_matches_twirled_shadow) {
    Rng rng(95, "test/comb");
    RealVector p = random_distribution(4, rng);
    Channel ch = mix_channels({0.97, 0.03}, {pauli_channel(p), random_channel(1, 1, 2, rng)});
    std::vector<TestOperator> tests;
    std::vector<Tester> testers;
    for (int i = 0; i < 10; i++) {
        Matrix r = random_density(2, rng), m = random_effect(2, rng);
        tests.push_back(product_test(r, m));
        testers.push_back(product_tester({r}, {m}));
    }
    QueryBudget budget{3000, 0.2, 0.05, 10, Mechanism::kNaive};
    TwirledShadowResult a = twirled_shadow(ch, tests, budget, 11);
    CombShadowResult b = comb_shadow(comb_from_channel(ch), testers, budget, 11);
    EXPECT_EQ(a.slack, b.slack);
    EXPECT_EQ(a.answers, b.answers);
}
