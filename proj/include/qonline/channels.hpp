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

#ifndef QONLINE_CHANNELS_HPP
#define QONLINE_CHANNELS_HPP

#include <optional>
#include <vector>

#include "qonline/linalg.hpp"
#include "qonline/rng.hpp"

namespace qonline {

/// A quantum channel from n_in to n_out qubits held as Kraus operators, a
/// Choi matrix, or both.
///
/// The Choi matrix is C = sum_ij |i><j| (x) N(|i><j|), input factor first, so
/// that Tr_B[C] = I_A for trace-preserving maps.
struct Channel {
    int n_in = 0;
    int n_out = 0;
    std::optional<std::vector<Matrix>> kraus;
    std::optional<Matrix> choi;

    Eigen::Index dim_in() const { return Eigen::Index{1} << n_in; }
    Eigen::Index dim_out() const { return Eigen::Index{1} << n_out; }
};

Channel channel_from_kraus(std::vector<Matrix> kraus, double tol = 1e-9);
Channel channel_from_choi(Matrix choi, int n_in, int n_out, double tol = 1e-9);
Channel unitary_channel(const Matrix &u);
Channel identity_channel(int n);
/// rho -> Tr[rho] I / d.
Channel depolarizing_channel(int n);
/// Convex combination sum_k w_k N_k of channels with Kraus lists.
Channel mix_channels(const std::vector<double> &weights, const std::vector<Channel> &channels);
/// Sequential composition: first applied, then second.
Channel compose(const Channel &first, const Channel &second);
/// Stinespring dilation with a Haar isometry into output (x) environment.
Channel random_channel(int n_in, int n_out, Eigen::Index env_dim, Rng &rng);

Matrix choi_of(const Channel &ch);
/// Kraus operators from the eigendecomposition of a Choi matrix.
std::vector<Matrix> kraus_from_choi(const Matrix &choi, Eigen::Index d_in, Eigen::Index d_out);
/// Checks the trace-preservation and positivity invariants; throws on failure.
void validate_channel(const Channel &ch, double tol = 1e-9);

/// X -> Tr_A[(X^T (x) I) C].
Matrix apply_choi(const Matrix &choi, Eigen::Index d_in, Eigen::Index d_out, const Matrix &x);
Matrix apply_kraus(const std::vector<Matrix> &kraus, const Matrix &x);
Matrix apply_channel(const Channel &ch, const Matrix &rho);

/// PSD operator E on input (x) output with an optional certificate sigma_A
/// such that E <= sigma_A (x) I_B.
struct TestOperator {
    Matrix op;
    std::optional<Matrix> certificate;
};

/// rho^T (x) M with certificate rho^T.
TestOperator product_test(const Matrix &rho, const Matrix &effect);
void validate_test_operator(const TestOperator &e, double tol = kPsdTolerance);

/// Tr[E C(N)] after validating E.
double born_value(const TestOperator &e, const Channel &ch);
double born_value(const Matrix &e, const Matrix &choi);
/// Born value of the product test rho^T (x) M without forming it.
double product_born_value(const Matrix &rho, const Matrix &effect, const Matrix &choi);

/// Coefficients e_{z,x} = Tr[E Gamma^{z,x}] for an operator on 2n qubits,
/// indexed lexicographically in (z, x).
RealVector bell_coefficients(const Matrix &e);

void validate_error_rates(const RealVector &p);
int qubits_for_error_rates(const RealVector &p);

/// Choi matrix sum p_{z,x} Gamma^{z,x}.
Matrix pauli_choi(const RealVector &p);
/// Kraus operators sqrt(p_{z,x}) P^{z,x} together with the Choi matrix.
Channel pauli_channel(const RealVector &p);

/// Error rates (1/d) Tr[Phi^{z,x} C] of the Pauli-twirled channel.
RealVector pauli_twirl(const Channel &ch);
RealVector pauli_twirl_choi(const Matrix &choi);
/// sum_{z,x} Phi^{z,x} C Phi^{z,x}.
Matrix bell_pinching(const Matrix &choi);
/// 4^{-n} sum_P (conj(P) (x) P)^dagger C (conj(P) (x) P).
Matrix pauli_conjugation_average(const Matrix &choi);

/// ||p - q||_1, the diamond distance between the Pauli channels.
double diamond_distance_pauli(const RealVector &p, const RealVector &q);
/// ||(id (x) (N_A - N_B))(Phi)||_1 for the maximally entangled probe.
double entangled_probe_distance(const Channel &a, const Channel &b);
/// ||C(N_A) - C(N_B)||_1, an upper bound on the diamond distance.
double choi_trace_norm_bound(const Channel &a, const Channel &b);
/// Best value of ||(id (x) (N_A - N_B))(psi)||_1 over the maximally entangled
/// probe and `trials` random pure probes.
double diamond_lower_bound_probe(const Channel &a, const Channel &b, int trials, Rng &rng);

}  // namespace qonline

#endif  // QONLINE_CHANNELS_HPP
