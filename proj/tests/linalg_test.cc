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

#include "qonline/linalg.hpp"

#include "gtest/gtest.h"

#include "qonline/random.hpp"

using namespace qonline;

TEST(pauli_operator, identity_and_izx) {
    EXPECT_TRUE(pauli_operator(PauliIndex({0}, {0})).isApprox(identity(2)));
    Matrix z(2, 2), x(2, 2), y(2, 2);
    z << 1, 0, 0, -1;
    x << 0, 1, 1, 0;
    y << Complex(0), Complex(0, -1), Complex(0, 1), Complex(0);
    Matrix by_hand = Complex(0, 1) * z * x;
    Matrix p = pauli_operator(PauliIndex({1}, {1}));
    EXPECT_LE((p - by_hand).norm(), 1e-15);
    EXPECT_LE((p + y).norm(), 1e-15);
}

TEST(pauli_operator, phase_does_not_reach_bell_projector) {
    Matrix y(2, 2);
    y << Complex(0), Complex(0, -1), Complex(0, 1), Complex(0);
    Vector v = Vector::Zero(4);
    for (int i = 0; i < 2; i++) {
        for (int k = 0; k < 2; k++) {
            v(2 * i + k) = y(k, i) / std::sqrt(2.0);
        }
    }
    EXPECT_LE((bell_projector(PauliIndex({1}, {1})) - v * v.adjoint()).norm(), 1e-15);
}

TEST(pauli_operator, unitary_for_every_label) {
    for (int n = 1; n <= 3; n++) {
        for (std::size_t k = 0; k < num_paulis(n); k++) {
            Matrix p = pauli_operator(PauliIndex::from_flat(n, k));
            EXPECT_LE((p * p.adjoint() - identity(p.rows())).norm(), 1e-12);
        }
    }
}

TEST(pauli_operator, rejects_mismatched_lengths) {
    EXPECT_THROW(PauliIndex({0, 1}, {1}), std::invalid_argument);
}

TEST(pauli_index, flat_round_trip_is_lexicographic) {
    PauliIndex idx({1, 0}, {0, 1});
    EXPECT_EQ(idx.flat(), 0b1001u);
    for (std::size_t k = 0; k < num_paulis(2); k++) {
        EXPECT_EQ(PauliIndex::from_flat(2, k).flat(), k);
    }
}

TEST(bell_projector, canonical_state) {
    Vector phi = Vector::Zero(4);
    phi(0) = phi(3) = 1 / std::sqrt(2.0);
    EXPECT_LE((bell_projector(PauliIndex({0}, {0})) - phi * phi.adjoint()).norm(), 1e-15);
}

TEST(bell_projector, orthonormal_resolution_of_identity) {
    for (int n = 1; n <= 2; n++) {
        const std::size_t count = num_paulis(n);
        Matrix sum = Matrix::Zero(count, count);
        for (std::size_t a = 0; a < count; a++) {
            Matrix pa = bell_projector(PauliIndex::from_flat(n, a));
            sum += pa;
            for (std::size_t b = 0; b < count; b++) {
                Matrix pb = bell_projector(PauliIndex::from_flat(n, b));
                EXPECT_NEAR(std::abs(trace_product(pa, pb)), a == b ? 1.0 : 0.0, 1e-12);
            }
        }
        EXPECT_LE((sum - identity(count)).norm(), 1e-10);
    }
}

TEST(partial_trace, product_rule_and_trace) {
    Rng rng(1, "test/ptrace");
    Matrix x = random_density(2, rng), y = random_density(4, rng) * 3.0;
    Matrix xy = kron(x, y);
    EXPECT_LE((partial_trace(xy, 2, 4, Keep::kA) - y.trace() * x).norm(), 1e-12);
    EXPECT_LE((partial_trace(xy, 2, 4, Keep::kB) - x.trace() * y).norm(), 1e-12);
    Matrix r = gaussian_matrix(8, 8, rng);
    EXPECT_NEAR(std::abs(partial_trace(r, 2, 4, Keep::kA).trace() - r.trace()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(partial_trace(partial_trace(r, 2, 4, Keep::kA), 1, 2, Keep::kB).trace() - r.trace()), 0.0,
                1e-12);
    EXPECT_THROW(partial_trace(r, 3, 3, Keep::kA), std::invalid_argument);
}

TEST(partial_trace, linear) {
    Rng rng(2, "test/ptrace");
    Matrix a = gaussian_matrix(8, 8, rng), b = gaussian_matrix(8, 8, rng);
    Complex s(0.3, -1.2);
    Matrix lhs = partial_trace(Matrix(a + s * b), 4, 2, Keep::kB);
    Matrix rhs = partial_trace(a, 4, 2, Keep::kB) + s * partial_trace(b, 4, 2, Keep::kB);
    EXPECT_LE((lhs - rhs).norm(), 1e-12);
}

TEST(partial_trace, identity_channel_choi) {
    Vector gamma = Vector::Zero(4);
    gamma(0) = gamma(3) = 1;
    Matrix c = gamma * gamma.adjoint();
    EXPECT_LE((partial_trace(c, 2, 2, Keep::kA) - identity(2)).norm(), 1e-15);
}

TEST(partial_trace, multipartite_matches_bipartite) {
    Rng rng(3, "test/ptrace");
    Matrix a = random_density(2, rng), b = random_density(2, rng), c = random_density(4, rng);
    Matrix abc = kron(kron(a, b), c);
    Matrix ac = partial_trace(abc, {2, 2, 4}, {false, true, false});
    EXPECT_LE((ac - kron(a, c)).norm(), 1e-12);
    Matrix perm = permute_subsystems(abc, {2, 2, 4}, {2, 0, 1});
    EXPECT_LE((perm - kron(kron(c, a), b)).norm(), 1e-12);
}

TEST(partial_transpose, swaps_factor_indices) {
    Rng rng(4, "test/ptrans");
    Matrix a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(4, 4, rng);
    Matrix pt = partial_transpose(kron(a, b), {2, 4}, {false, true});
    EXPECT_LE((pt - kron(a, Matrix(b.transpose()))).norm(), 1e-12);
}

TEST(herm_fn, exp_zero_and_log_scaled_identity) {
    EXPECT_LE((herm_fn(Matrix(Matrix::Zero(3, 3)), HermFn::kExp) - identity(3)).norm(), 1e-15);
    Matrix e_id = std::exp(1.0) * identity(4);
    EXPECT_LE((herm_fn(e_id, HermFn::kLog) - identity(4)).norm(), 1e-12);
}

TEST(herm_fn, exp_log_round_trip) {
    Rng rng(5, "test/hermfn");
    for (int trial = 0; trial < 20; trial++) {
        Matrix rho = random_density(8, rng);
        Matrix back = herm_fn(herm_fn(rho, HermFn::kLog), HermFn::kExp);
        EXPECT_LE((back - rho).norm(), 1e-9 * rho.norm());
    }
}

TEST(herm_fn, log_rejects_singular_but_clamped_log_does_not) {
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1;
    EXPECT_THROW(herm_fn(p, HermFn::kLog), std::domain_error);
    Matrix l = herm_fn(p, HermFn::kClampedLog);
    EXPECT_NEAR(l(1, 1).real(), std::log(kLogFloor), 1e-6);
}

TEST(herm_fn, exp_is_positive_definite) {
    Rng rng(6, "test/hermfn");
    Matrix h = 5.0 * random_unit_hermitian(6, rng);
    EXPECT_GT(min_eigenvalue(matrix_exp(h)), 0.0);
}

TEST(eigendecomposition, reconstructs_hermitian_matrices) {
    Rng rng(7, "test/eig");
    for (int trial = 0; trial < 10; trial++) {
        Matrix h = random_unit_hermitian(8, rng) * 3.0;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        Matrix back = es.eigenvectors() * es.eigenvalues().cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint();
        EXPECT_LE((back - h).norm(), 1e-9 * h.norm());
    }
}

TEST(trace_norm, basic_values) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = -1;
    EXPECT_NEAR(trace_norm(d), 2.0, 1e-15);
    Rng rng(8, "test/tn");
    EXPECT_NEAR(trace_norm(random_density(4, rng)), 1.0, 1e-12);
    for (int trial = 0; trial < 20; trial++) {
        Matrix a = random_unit_hermitian(4, rng), b = random_unit_hermitian(4, rng);
        EXPECT_LE(trace_norm(Matrix(a + b)), trace_norm(a) + trace_norm(b) + 1e-12);
    }
}

TEST(entropy, relative_entropy_nonnegative_and_zero_on_equal) {
    Rng rng(9, "test/entropy");
    Matrix rho = random_density(4, rng), sigma = random_density(4, rng);
    EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-10);
    EXPECT_GT(relative_entropy(rho, sigma), 0.0);
    EXPECT_NEAR(entropy(Matrix(identity(4) / 4.0)), std::log(4.0), 1e-12);
}
