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

#ifndef QONLINE_COMBS_HPP
#define QONLINE_COMBS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qonline/channels.hpp"
#include "qonline/linalg.hpp"
#include "qonline/rng.hpp"

namespace qonline {

struct Leg {
    std::string name;
    int dim = 1;
};

/// Operator on a tensor product of named legs, in the listed order.
struct LabeledOperator {
    Matrix op;
    std::vector<Leg> legs;

    std::vector<int> dims() const;
    int position(const std::string &name) const;
};

/// Link product: contracts every leg name the two operators share, using a
/// partial transpose on the first operator. Output legs are the unshared legs
/// of `x` followed by the unshared legs of `y`.
LabeledOperator link(const LabeledOperator &x, const LabeledOperator &y);
LabeledOperator reorder(const LabeledOperator &x, const std::vector<std::string> &names);

/// Choi operator of an r-step process with legs ordered A1, B1, ..., Ar, Br.
struct Comb {
    std::vector<int> in_qubits;
    std::vector<int> out_qubits;
    Matrix op;

    int steps() const { return static_cast<int>(in_qubits.size()); }
    std::vector<int> leg_dims() const;
    std::vector<Leg> legs() const;
};

/// One step of a sequential network: Kraus operators from M_{k-1} (x) A_k to
/// M_k (x) B_k, memory factor first. Memory dimension 1 means no memory.
struct CombStep {
    std::vector<Matrix> kraus;
    Eigen::Index mem_in = 1;
    int in_qubits = 1;
    Eigen::Index mem_out = 1;
    int out_qubits = 1;
};

Comb comb_from_channel(const Channel &ch);
Comb comb_from_channels(const std::vector<CombStep> &steps);
/// Memoryless process applying the given channels in order.
Comb comb_from_independent_channels(const std::vector<Channel> &channels);

struct CombReport {
    /// violations[0] is ||Tr_{B1} N_1 - I_{A1}||_F; entry k compares
    /// Tr_{B_{k+1}} N_{k+1} with N_k (x) I_{A_{k+1}}.
    std::vector<double> violations;
    double min_eigenvalue = 0;

    double max_violation() const;
    bool valid(double tol = 1e-9) const;
};

CombReport check_comb(const Matrix &op, const std::vector<int> &in_qubits, const std::vector<int> &out_qubits);
CombReport check_comb(const Comb &comb);

/// Marginal N_k for k = 1..r (N_r is the comb itself).
Matrix comb_marginal(const Comb &comb, int k);

/// Pairs (output step of `first`, input step of `second`), 0-based.
using Wiring = std::vector<std::pair<int, int>>;

/// Links two combs along the given wiring. The remaining legs, first comb
/// then second, must alternate input/output so the result is again a comb.
Comb link_product(const Comb &first, const Comb &second, const Wiring &wiring);
/// Sequential composition of two single-step combs.
Comb link_product(const Comb &first, const Comb &second);

/// Joint index (z_1..z_r, x_1..x_r) as one Pauli label on the concatenated
/// register, and the inverse split into per-step labels.
std::size_t joint_pauli_index(const std::vector<PauliIndex> &steps);
std::vector<PauliIndex> split_joint_index(std::size_t flat, const std::vector<int> &qubits);

/// Operator on legs A_1, B_1, ..., A_r, B_r regrouped as (A_1..A_r, B_1..B_r).
Matrix regroup_inputs_outputs(const Matrix &op, const std::vector<int> &in_qubits,
                              const std::vector<int> &out_qubits);
Matrix regroup_inputs_outputs(const Comb &comb);

/// Outcome distribution of time-local Bell measurements,
/// 2^{-nr} Tr[(x)_k Phi^{z_k,x_k} N], indexed by joint_pauli_index.
RealVector time_local_distribution(const Comb &comb);
std::vector<PauliIndex> time_local_twirl_sample(const Comb &comb, Rng &rng);

/// Comb-shaped measurement E with optional certificate S, E <= S (x) I_{B_r}.
struct Tester {
    int steps = 0;
    Matrix op;
    std::optional<Matrix> certificate;
};

/// (x)_k (rho_k^T (x) M_k): independent preparations and measurements.
Tester product_tester(const std::vector<Matrix> &states, const std::vector<Matrix> &effects);

/// Tester built from an input state on A_1 (x) R, intermediate channels
/// B_k (x) R -> A_{k+1} (x) R (Kraus, ancilla last), and a final effect on
/// B_r (x) R. The ancilla R has dimension `ancilla_dim` throughout.
Tester sequential_tester(const Matrix &input_state, const std::vector<std::vector<Matrix>> &intermediate,
                         const Matrix &final_effect, const std::vector<int> &in_qubits,
                         const std::vector<int> &out_qubits, Eigen::Index ancilla_dim);

void validate_tester(const Tester &t, Eigen::Index last_out_dim, double tol = kPsdTolerance);
double tester_value(const Tester &t, const Comb &comb);

}  // namespace qonline

#endif  // QONLINE_COMBS_HPP
