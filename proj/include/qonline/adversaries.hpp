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

#ifndef QONLINE_ADVERSARIES_HPP
#define QONLINE_ADVERSARIES_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qonline/channels.hpp"
#include "qonline/rng.hpp"

namespace qonline {

struct Challenge {
    TestOperator e;
    double truth = 0;
};

/// Hidden-channel adversary: sampled product test operators, feedback within
/// epsilon/3 of the Born value.
class RealizableAdversary {
   public:
    RealizableAdversary(Channel hidden, double epsilon, uint64_t seed);

    Challenge next(uint64_t t) const;
    /// Revealed after the learner commits to `prediction`; the value does not
    /// depend on it.
    double feedback(uint64_t t, double prediction) const;

    const Channel &hidden() const { return hidden_; }
    const Matrix &hidden_choi() const { return choi_; }
    double epsilon() const { return epsilon_; }

   private:
    std::pair<Matrix, Matrix> sample(uint64_t t) const;

    Channel hidden_;
    Matrix choi_;
    double epsilon_;
    uint64_t seed_;
};

/// Prediction rounding for {0,1}-valued games.
inline int round_prediction(double y) { return y >= 0.5 ? 1 : 0; }

/// Test operator rho(t)^T (x) M(t) with rho(t) = |0..0 + 0..0><..| and
/// M(t) = |0..0 - 0..0><..|, the + / - on qubit t (1-based).
TestOperator pauli_embedding_test(int n, int t);
/// Conjugation by (x)_i Z^{f(i)}.
Channel pauli_embedding_channel(const std::vector<int> &f);
RealVector pauli_embedding_error_rates(const std::vector<int> &f);

enum class EmbeddingKind { kUnitary, kChannel };

struct FunctionEmbedding {
    Channel channel;
    std::vector<TestOperator> tests;
    std::vector<int> values;
};

/// Unitary kind: q qubits, f on q-1 bits, U_f |x,b> = |x, b xor f(x)>.
/// Channel kind: q qubits, f on q bits, measure-and-prepare |f(x)> |0..0>.
/// Test x has Born value f(x).
FunctionEmbedding function_embedding(EmbeddingKind kind, int q, const std::vector<int> &f);

/// Coefficient vector whose entries are read one at a time, with every read
/// logged. All entries are zero.
class CoefficientOracle {
   public:
    explicit CoefficientOracle(std::size_t size) : size_(size) {}

    double read(std::size_t index);
    std::size_t size() const { return size_; }
    const std::vector<std::size_t> &reads() const { return reads_; }
    void clear() { reads_.clear(); }

   private:
    std::size_t size_;
    std::vector<std::size_t> reads_;
};

class QueryLearner {
   public:
    virtual ~QueryLearner() = default;
    virtual double predict(CoefficientOracle &oracle) = 0;
    virtual void feedback(double b) = 0;
};

/// Reads q coefficients per round and predicts the running mean of past
/// feedback plus a weighted sum of what it read.
class SparseReadLearner : public QueryLearner {
   public:
    SparseReadLearner(std::size_t reads_per_round, uint64_t seed);

    double predict(CoefficientOracle &oracle) override;
    void feedback(double b) override;

   private:
    std::size_t q_;
    Rng rng_;
    double feedback_sum_ = 0;
    long rounds_ = 0;
};

struct HardnessCertificate {
    /// Point mass on an index the learner never read.
    RealVector p_star;
    std::size_t hidden_index = 0;
    /// Per round: zero vector or the unit vector at hidden_index.
    std::vector<RealVector> e_tilde;
};

struct HardnessGame {
    int n = 0;
    std::vector<double> predictions;
    std::vector<int> rounded;
    std::vector<int> claimed;
    std::vector<std::vector<std::size_t>> reads;
    long mistakes = 0;
    HardnessCertificate certificate;
};

/// Plays the all-zeros challenge against the learner and answers NOT of its
/// rounded prediction. With rounds < 0 the game continues while the total
/// number of reads stays at most 4^n - 1; otherwise exactly `rounds` rounds
/// are played and exceeding that read budget is an error.
HardnessGame all_zeros_adversary(int n, QueryLearner &learner, long rounds = -1);

/// Checks the certificate exactly: p* is a distribution, each e~ vanishes on
/// the indices read in its round, and p* . e~ equals the claimed value.
bool verify_certificate(const HardnessGame &game);

/// Gamma^{z,x} / 4^n on 2n qubits; its coefficient vector is the unit vector
/// at (z, x).
Matrix unit_coefficient_operator(int n, std::size_t index);

}  // namespace qonline

#endif  // QONLINE_ADVERSARIES_HPP
