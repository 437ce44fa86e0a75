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

#include "qonline/adversaries.hpp"

#include <algorithm>
#include <set>

#include "qonline/random.hpp"

namespace qonline {

RealizableAdversary::RealizableAdversary(Channel hidden, double epsilon, uint64_t seed)
    : hidden_(std::move(hidden)), epsilon_(epsilon), seed_(seed) {
    choi_ = choi_of(hidden_);
}

std::pair<Matrix, Matrix> RealizableAdversary::sample(uint64_t t) const {
    Rng rng(seed_, "adversary/challenge", t);
    Vector psi = random_pure_state(hidden_.dim_in(), rng);
    Matrix effect = random_effect(hidden_.dim_out(), rng);
    return {psi * psi.adjoint(), effect};
}

Challenge RealizableAdversary::next(uint64_t t) const {
    auto [rho, effect] = sample(t);
    Challenge c;
    c.e = product_test(rho, effect);
    c.truth = product_born_value(rho, effect, choi_);
    return c;
}

double RealizableAdversary::feedback(uint64_t t, double prediction) const {
    (void)prediction;
    auto [rho, effect] = sample(t);
    const double truth = product_born_value(rho, effect, choi_);
    Rng rng(seed_, "adversary/feedback", t);
    double noise = rng.uniform(-epsilon_ / 3, epsilon_ / 3);
    return std::clamp(truth + noise, 0.0, 1.0);
}

namespace {

Vector basis_vector(Eigen::Index d, Eigen::Index k) {
    Vector v = Vector::Zero(d);
    v(k) = 1;
    return v;
}

Matrix projector(const Vector &v) { return v * v.adjoint(); }

}  // namespace

TestOperator pauli_embedding_test(int n, int t) {
    if (t < 1 || t > n) {
        throw std::invalid_argument("pauli_embedding_test: round index outside 1..n");
    }
    Vector zero(2), plus(2), minus(2);
    zero << 1, 0;
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    Matrix rho = identity(1), m = identity(1);
    for (int q = 1; q <= n; q++) {
        rho = kron(rho, projector(q == t ? plus : zero));
        m = kron(m, projector(q == t ? minus : zero));
    }
    return product_test(rho, m);
}

Channel pauli_embedding_channel(const std::vector<int> &f) {
    PauliIndex idx(std::vector<uint8_t>(f.begin(), f.end()), std::vector<uint8_t>(f.size(), 0));
    return unitary_channel(pauli_operator(idx));
}

RealVector pauli_embedding_error_rates(const std::vector<int> &f) {
    const int n = static_cast<int>(f.size());
    PauliIndex idx(std::vector<uint8_t>(f.begin(), f.end()), std::vector<uint8_t>(n, 0));
    RealVector p = RealVector::Zero(num_paulis(n));
    p(idx.flat()) = 1;
    return p;
}

FunctionEmbedding function_embedding(EmbeddingKind kind, int q, const std::vector<int> &f) {
    if (q < 1 || q > 3) {
        throw std::invalid_argument("function_embedding: q must lie in 1..3");
    }
    const Eigen::Index d = Eigen::Index{1} << q;
    FunctionEmbedding out;
    if (kind == EmbeddingKind::kUnitary) {
        const Eigen::Index inputs = d / 2;
        if (static_cast<Eigen::Index>(f.size()) != inputs) {
            throw std::invalid_argument("function_embedding: unitary kind needs f on q-1 bits");
        }
        Matrix u = Matrix::Zero(d, d);
        for (Eigen::Index x = 0; x < inputs; x++) {
            for (int b = 0; b < 2; b++) {
                u(2 * x + (b ^ f[x]), 2 * x + b) = 1;
            }
        }
        out.channel = unitary_channel(u);
        for (Eigen::Index x = 0; x < inputs; x++) {
            out.tests.push_back(product_test(projector(basis_vector(d, 2 * x)), projector(basis_vector(d, 2 * x + 1))));
            out.values.push_back(f[x]);
        }
        return out;
    }
    if (static_cast<Eigen::Index>(f.size()) != d) {
        throw std::invalid_argument("function_embedding: channel kind needs f on q bits");
    }
    std::vector<Matrix> kraus;
    for (Eigen::Index x = 0; x < d; x++) {
        Eigen::Index target = static_cast<Eigen::Index>(f[x]) << (q - 1);
        kraus.push_back(basis_vector(d, target) * basis_vector(d, x).adjoint());
    }
    out.channel = channel_from_kraus(std::move(kraus));
    const Matrix one = projector(basis_vector(d, Eigen::Index{1} << (q - 1)));
    for (Eigen::Index x = 0; x < d; x++) {
        out.tests.push_back(product_test(projector(basis_vector(d, x)), one));
        out.values.push_back(f[x]);
    }
    return out;
}

double CoefficientOracle::read(std::size_t index) {
    if (index >= size_) {
        throw std::out_of_range("CoefficientOracle: index out of range");
    }
    reads_.push_back(index);
    return 0.0;
}

SparseReadLearner::SparseReadLearner(std::size_t reads_per_round, uint64_t seed)
    : q_(reads_per_round), rng_(seed, "learner/sparse-read") {}

double SparseReadLearner::predict(CoefficientOracle &oracle) {
    double y = rounds_ > 0 ? feedback_sum_ / static_cast<double>(rounds_) : 0.5;
    for (std::size_t k = 0; k < q_; k++) {
        y += 0.25 * oracle.read(rng_.below(oracle.size()));
    }
    return y;
}

void SparseReadLearner::feedback(double b) {
    feedback_sum_ += b;
    rounds_++;
}

HardnessGame all_zeros_adversary(int n, QueryLearner &learner, long rounds) {
    const std::size_t size = num_paulis(n);
    const std::size_t budget = size - 1;
    HardnessGame game;
    game.n = n;
    std::size_t total = 0;
    CoefficientOracle oracle(size);
    for (long t = 0; rounds < 0 || t < rounds; t++) {
        oracle.clear();
        double y = learner.predict(oracle);
        if (total + oracle.reads().size() > budget) {
            if (rounds >= 0) {
                throw std::runtime_error("all_zeros_adversary: read budget exhausted after " + std::to_string(t) +
                                         " rounds");
            }
            break;
        }
        total += oracle.reads().size();
        int yr = round_prediction(y);
        int claim = 1 - yr;
        learner.feedback(claim);
        game.predictions.push_back(y);
        game.rounded.push_back(yr);
        game.claimed.push_back(claim);
        game.reads.push_back(oracle.reads());
        game.mistakes++;
    }
    std::set<std::size_t> seen;
    for (const auto &r : game.reads) {
        seen.insert(r.begin(), r.end());
    }
    std::size_t hidden = 0;
    while (seen.count(hidden)) {
        hidden++;
    }
    game.certificate.hidden_index = hidden;
    game.certificate.p_star = RealVector::Zero(size);
    game.certificate.p_star(hidden) = 1;
    for (int c : game.claimed) {
        RealVector e = RealVector::Zero(size);
        if (c) {
            e(hidden) = 1;
        }
        game.certificate.e_tilde.push_back(std::move(e));
    }
    return game;
}

bool verify_certificate(const HardnessGame &game) {
    const auto &cert = game.certificate;
    if (cert.p_star.minCoeff() < 0 || cert.p_star.sum() != 1.0) {
        return false;
    }
    if (cert.e_tilde.size() != game.claimed.size()) {
        return false;
    }
    for (std::size_t t = 0; t < game.claimed.size(); t++) {
        const RealVector &e = cert.e_tilde[t];
        for (std::size_t idx : game.reads[t]) {
            if (e(idx) != 0.0) {
                return false;
            }
        }
        if (cert.p_star.dot(e) != static_cast<double>(game.claimed[t])) {
            return false;
        }
        if ((e.array() != 0.0).count() > 1) {
            return false;
        }
    }
    return true;
}

Matrix unit_coefficient_operator(int n, std::size_t index) {
    Vector v = bell_state(PauliIndex::from_flat(n, index));
    const double d = static_cast<double>(Eigen::Index{1} << n);
    // Gamma = d |Phi><Phi|.
    return (d / static_cast<double>(num_paulis(n))) * (v * v.adjoint());
}

}  // namespace qonline
