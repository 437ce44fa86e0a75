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

#include "qonline/combs.hpp"

#include "gtest/gtest.h"

#include "qonline/random.hpp"

using namespace qonline;

namespace {

Matrix conjugate_by(const std::vector<Matrix> &kraus, const Matrix &x) {
    Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
    for (const auto &k : kraus) {
        out += k * x * k.adjoint();
    }
    return out;
}

std::vector<Matrix> lift(const std::vector<Matrix> &kraus, Eigen::Index left, Eigen::Index right) {
    std::vector<Matrix> out;
    for (const auto &k : kraus) {
        out.push_back(kron(kron(identity(left), k), identity(right)));
    }
    return out;
}

std::vector<Matrix> random_kraus(Eigen::Index d_in, Eigen::Index d_out, Rng &rng) {
    Matrix v = haar_isometry(d_in, d_out * 2, rng);
    std::vector<Matrix> out;
    for (int e = 0; e < 2; e++) {
        Matrix k(d_out, d_in);
        for (Eigen::Index i = 0; i < d_out; i++) {
            k.row(i) = v.row(i * 2 + e);
        }
        out.push_back(k);
    }
    return out;
}

}  // namespace

TEST(comb_from_channels, single_step_is_choi) {
    Rng rng(31, "test/comb");
    Channel ch = random_channel(1, 1, 2, rng);
    Comb c = comb_from_channel(ch);
    EXPECT_LE((c.op - choi_of(ch)).norm(), 1e-12);
    EXPECT_TRUE(check_comb(c).valid());
}

TEST(comb_from_channels, independent_steps_give_tensor_product) {
    Rng rng(32, "test/comb");
    Channel a = random_channel(1, 1, 2, rng), b = random_channel(1, 1, 3, rng);
    Comb c = comb_from_independent_channels({a, b});
    EXPECT_LE((c.op - kron(choi_of(a), choi_of(b))).norm(), 1e-10);
}

TEST(comb_from_channels, memory_comb_satisfies_ladder) {
    Rng rng(33, "test/comb");
    for (int trial = 0; trial < 5; trial++) {
        CombStep first{random_kraus(2, 4, rng), 1, 1, 2, 1};
        CombStep second{random_kraus(4, 4, rng), 2, 1, 2, 1};
        CombStep third{random_kraus(4, 2, rng), 2, 1, 1, 1};
        Comb two = comb_from_channels({first, second});
        Comb three = comb_from_channels({first, second, third});
        CombReport r2 = check_comb(two), r3 = check_comb(three);
        EXPECT_EQ(r2.violations.size(), 2u);
        EXPECT_EQ(r3.violations.size(), 3u);
        EXPECT_LE(r2.max_violation(), 1e-9);
        EXPECT_LE(r3.max_violation(), 1e-9);
        EXPECT_GE(r3.min_eigenvalue, -1e-9);
    }
}

TEST(comb_from_channels, rejects_broken_memory_chain) {
    Rng rng(34, "test/comb");
    CombStep first{random_kraus(2, 4, rng), 1, 1, 2, 1};
    CombStep second{random_kraus(2, 2, rng), 1, 1, 1, 1};
    EXPECT_THROW(comb_from_channels({first, second}), std::invalid_argument);
}

TEST(check_comb, random_psd_fails_first_level) {
    Rng rng(35, "test/check");
    for (int trial = 0; trial < 10; trial++) {
        Matrix n = random_density(16, rng) * 4.0;
        CombReport report = check_comb(n, {1, 1}, {1, 1});
        EXPECT_GT(report.violations[0], 1e-3);
        EXPECT_FALSE(report.valid());
    }
}

TEST(check_comb, scaling_violates_first_level_by_root_input_dim) {
    Rng rng(36, "test/check");
    for (int n_in : {1, 2}) {
        Comb c = comb_from_channel(random_channel(n_in, 1, 2, rng));
        c.op *= 1.1;
        CombReport report = check_comb(c);
        const double d = static_cast<double>(1 << n_in);
        // ||0.1 I_d||_F = 0.1 sqrt(d).
        EXPECT_NEAR(report.violations[0], 0.1 * std::sqrt(d), 1e-9);
    }
}

TEST(link_product, identity_is_neutral) {
    Rng rng(37, "test/link");
    Comb c = comb_from_channel(random_channel(1, 1, 2, rng));
    Comb id = comb_from_channel(identity_channel(1));
    EXPECT_LE((link_product(c, id).op - c.op).norm(), 1e-10);
    EXPECT_LE((link_product(id, c).op - c.op).norm(), 1e-10);
}

TEST(link_product, equals_choi_of_composition) {
    Rng rng(38, "test/link");
    for (int trial = 0; trial < 20; trial++) {
        Channel m = random_channel(1, 1, 2, rng), n = random_channel(1, 1, 2, rng);
        Comb linked = link_product(comb_from_channel(m), comb_from_channel(n));
        EXPECT_LE((linked.op - choi_of(compose(m, n))).norm(), 1e-10);
        EXPECT_TRUE(check_comb(linked).valid());
    }
}

TEST(link_product, associative) {
    Rng rng(39, "test/link");
    for (int trial = 0; trial < 10; trial++) {
        Comb a = comb_from_channel(random_channel(1, 1, 2, rng));
        Comb b = comb_from_channel(random_channel(1, 1, 2, rng));
        Comb c = comb_from_channel(random_channel(1, 1, 2, rng));
        Matrix left = link_product(link_product(a, b), c).op;
        Matrix right = link_product(a, link_product(b, c)).op;
        EXPECT_LE((left - right).norm(), 1e-10);
    }
}

TEST(link_product, rejects_wiring_that_breaks_alternation) {
    Rng rng(40, "test/link");
    Comb two = comb_from_independent_channels({random_channel(1, 1, 2, rng), random_channel(1, 1, 2, rng)});
    Comb one = comb_from_channel(random_channel(1, 1, 2, rng));
    EXPECT_THROW(link_product(two, one, {{0, 0}}), std::invalid_argument);
    EXPECT_THROW(link_product(one, one, {{1, 0}}), std::invalid_argument);
}

TEST(time_local_twirl, identity_steps_give_all_zero_outcome) {
    Rng rng(41, "test/tl");
    Comb c = comb_from_independent_channels({identity_channel(1), identity_channel(1)});
    RealVector p = time_local_distribution(c);
    EXPECT_NEAR(p(0), 1.0, 1e-12);
    for (int s = 0; s < 100; s++) {
        EXPECT_EQ(joint_pauli_index(time_local_twirl_sample(c, rng)), 0u);
    }
}

TEST(time_local_twirl, product_of_pauli_channels) {
    Rng rng(42, "test/tl");
    RealVector p = random_distribution(4, rng), q = random_distribution(4, rng);
    Comb c = comb_from_independent_channels({pauli_channel(p), pauli_channel(q)});
    RealVector exact = time_local_distribution(c);
    EXPECT_NEAR(exact.sum(), 1.0, 1e-9);
    RealVector counts = RealVector::Zero(exact.size());
    const int k = 100000;
    for (int s = 0; s < k; s++) {
        counts(joint_pauli_index(time_local_twirl_sample(c, rng))) += 1;
    }
    double tv = 0, exact_gap = 0;
    for (Eigen::Index j = 0; j < exact.size(); j++) {
        auto parts = split_joint_index(static_cast<std::size_t>(j), {1, 1});
        const double product = p(parts[0].flat()) * q(parts[1].flat());
        exact_gap = std::max(exact_gap, std::abs(exact(j) - product));
        tv += std::abs(counts(j) / k - product);
    }
    EXPECT_LE(exact_gap, 1e-12);
    EXPECT_LE(tv / 2, 0.02);
}

TEST(time_local_twirl, joint_index_round_trip) {
    for (std::size_t j = 0; j < 256; j++) {
        EXPECT_EQ(joint_pauli_index(split_joint_index(j, {1, 1, 2})), j);
    }
}

TEST(strategy_distance, l1_subadditive_on_bell_diagonal_products) {
    Rng rng(43, "test/strategy");
    for (int trial = 0; trial < 50; trial++) {
        RealVector p = random_distribution(4, rng), p2 = random_distribution(4, rng);
        RealVector q = random_distribution(4, rng), q2 = random_distribution(4, rng);
        RealVector pp(16), qq(16);
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 4; j++) {
                pp(4 * i + j) = p(i) * p2(j);
                qq(4 * i + j) = q(i) * q2(j);
            }
        }
        EXPECT_LE((pp - qq).lpNorm<1>(), (p - q).lpNorm<1>() + (p2 - q2).lpNorm<1>() + 1e-12);
    }
}

TEST(tester, product_tester_value_factorizes) {
    Rng rng(44, "test/tester");
    Channel a = random_channel(1, 1, 2, rng), b = random_channel(1, 1, 2, rng);
    Matrix r1 = random_density(2, rng), r2 = random_density(2, rng);
    Matrix m1 = random_effect(2, rng), m2 = random_effect(2, rng);
    Tester t = product_tester({r1, r2}, {m1, m2});
    EXPECT_NO_THROW(validate_tester(t, 2));
    const double expected = (m1 * apply_channel(a, r1)).trace().real() * (m2 * apply_channel(b, r2)).trace().real();
    EXPECT_NEAR(tester_value(t, comb_from_independent_channels({a, b})), expected, 1e-10);
}

TEST(tester, sequential_tester_matches_circuit_simulation) {
    Rng rng(45, "test/tester");
    const Eigen::Index ra = 2, mem = 2;
    for (int trial = 0; trial < 10; trial++) {
        std::vector<Matrix> step1 = random_kraus(2, mem * 2, rng);
        std::vector<Matrix> step2 = random_kraus(mem * 2, 2 * 2, rng);
        Comb comb = comb_from_channels({CombStep{step1, 1, 1, mem, 1}, CombStep{step2, mem, 1, 2, 1}});

        Matrix input = random_density(2 * ra, rng);
        std::vector<Matrix> middle = random_kraus(2 * ra, 2 * ra, rng);
        Matrix effect = random_effect(2 * ra, rng);
        Tester t = sequential_tester(input, {middle}, effect, {1, 1}, {1, 1}, ra);
        EXPECT_NO_THROW(validate_tester(t, 2));

        // A1 R -> M1 B1 R -> M1 A2 R -> M2 B2 R -> B2 R.
        Matrix s = conjugate_by(lift(step1, 1, ra), input);
        s = conjugate_by(lift(middle, mem, 1), s);
        s = conjugate_by(lift(step2, 1, ra), s);
        s = partial_trace(s, 2, 2 * ra, Keep::kB);
        const double circuit = (effect * s).trace().real();
        EXPECT_NEAR(tester_value(t, comb), circuit, 1e-10);
    }
}

TEST(tester, values_stay_in_unit_interval) {
    Rng rng(46, "test/tester");
    for (int trial = 0; trial < 20; trial++) {
        Comb comb = comb_from_channels({CombStep{random_kraus(2, 4, rng), 1, 1, 2, 1},
                                        CombStep{random_kraus(4, 2, rng), 2, 1, 1, 1}});
        Tester t = sequential_tester(random_density(4, rng), {random_kraus(4, 4, rng)}, random_effect(4, rng),
                                     {1, 1}, {1, 1}, 2);
        const double v = tester_value(t, comb);
        EXPECT_GE(v, -1e-10);
        EXPECT_LE(v, 1 + 1e-10);
    }
}
