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

#include <cmath>

namespace qonline {

OutcomeSampler::OutcomeSampler(const RealVector &distribution)
    : p_(distribution.cwiseMax(0.0)), dist_(p_.data(), p_.data() + p_.size()) {}

std::vector<std::size_t> OutcomeSampler::sample(std::size_t k, Rng &rng) {
    std::vector<std::size_t> out(k);
    for (auto &s : out) {
        s = dist_(rng.engine());
    }
    return out;
}

RealVector bell_distribution(const Channel &ch) {
    if (ch.n_in != ch.n_out) {
        throw std::invalid_argument("bell_distribution: channel is not square");
    }
    return pauli_twirl(ch);
}

PauliIndex bell_sample(const Channel &ch, Rng &rng) {
    OutcomeSampler s(bell_distribution(ch));
    return PauliIndex::from_flat(ch.n_in, s.sample(rng));
}

std::vector<std::size_t> bell_samples(const Channel &ch, std::size_t k, Rng &rng) {
    OutcomeSampler s(bell_distribution(ch));
    return s.sample(k, rng);
}

RealVector empirical_distribution(const std::vector<std::size_t> &samples, std::size_t size) {
    RealVector f = RealVector::Zero(size);
    for (std::size_t s : samples) {
        f(s) += 1;
    }
    return samples.empty() ? f : RealVector(f / static_cast<double>(samples.size()));
}

void validate_budget(const QueryBudget &b) {
    if (b.k < 1) {
        throw std::invalid_argument("query budget: need at least one sample");
    }
    if (!(b.epsilon > 0 && b.epsilon < 1) || !(b.delta > 0 && b.delta < 1)) {
        throw std::invalid_argument("query budget: epsilon and delta must lie in (0, 1)");
    }
}

ShadowAnswerer::ShadowAnswerer(const std::vector<std::size_t> &samples, std::size_t outcomes, QueryBudget budget,
                               uint64_t seed)
    : budget_(budget), seed_(seed) {
    budget_.k = samples.size();
    validate_budget(budget_);
    full_ = empirical_distribution(samples, outcomes);
    if (budget_.mechanism == Mechanism::kSplitNoise) {
        const std::size_t nblocks = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(samples.size()))));
        block_size_ = samples.size() / nblocks;
        for (std::size_t b = 0; b < nblocks; b++) {
            std::vector<std::size_t> part(samples.begin() + b * block_size_, samples.begin() + (b + 1) * block_size_);
            blocks_.push_back(empirical_distribution(part, outcomes));
        }
    }
}

double ShadowAnswerer::answer(const TestOperator &e) {
    validate_test_operator(e);
    return answer_coefficients(bell_coefficients(e.op));
}

double ShadowAnswerer::answer_coefficients(const RealVector &e) {
    if (e.size() != full_.size()) {
        throw std::invalid_argument("ShadowAnswerer: query has the wrong number of coefficients");
    }
    if (budget_.mechanism == Mechanism::kNaive) {
        answered_++;
        return full_.dot(e);
    }
    if (answered_ >= blocks_.size()) {
        throw std::runtime_error("ShadowAnswerer: sample blocks exhausted");
    }
    Rng rng(seed_, "shadow/noise", answered_);
    double noise = rng.normal() * budget_.epsilon / 6;
    return blocks_[answered_++].dot(e) + noise;
}

double ShadowAnswerer::advertised_tolerance() const {
    const double l = std::log(4 / budget_.delta);
    if (budget_.mechanism == Mechanism::kNaive) {
        return std::sqrt(std::log(2 / budget_.delta) / (2 * static_cast<double>(budget_.k)));
    }
    return std::sqrt(l / (2 * static_cast<double>(block_size_))) + budget_.epsilon / 6 * std::sqrt(2 * l);
}

double exact_answer(const RealVector &distribution, const RealVector &e) { return distribution.dot(e); }

double twirl_slack(const Channel &ch) {
    Matrix c = choi_of(ch);
    return trace_norm(c - pauli_choi(pauli_twirl_choi(c))) / 2;
}

TwirledShadowResult twirled_shadow(const Channel &ch, const std::vector<TestOperator> &queries,
                                   const QueryBudget &budget, uint64_t seed, bool allow_large_slack) {
    validate_budget(budget);
    TwirledShadowResult out;
    out.slack = twirl_slack(ch);
    if (!allow_large_slack && out.slack >= budget.epsilon) {
        throw std::invalid_argument("twirled_shadow: twirling slack " + std::to_string(out.slack) +
                                    " exceeds the requested accuracy");
    }
    Rng rng(seed, "shadow/bell");
    std::vector<std::size_t> samples = bell_samples(ch, budget.k, rng);
    ShadowAnswerer answerer(samples, num_paulis(ch.n_in), budget, seed);
    for (const auto &q : queries) {
        out.answers.push_back(answerer.answer(q));
    }
    return out;
}

RealVector tester_coefficients(const Tester &t, const std::vector<int> &in_qubits,
                               const std::vector<int> &out_qubits) {
    return bell_coefficients(regroup_inputs_outputs(t.op, in_qubits, out_qubits));
}

CombShadowResult comb_shadow(const Comb &comb, const std::vector<Tester> &queries, const QueryBudget &budget,
                             uint64_t seed) {
    validate_budget(budget);
    RealVector p = time_local_distribution(comb);
    Matrix grouped = regroup_inputs_outputs(comb);
    CombShadowResult out;
    out.slack = trace_norm(grouped - pauli_choi(p)) / 2;
    if (out.slack >= budget.epsilon) {
        throw std::invalid_argument("comb_shadow: twirling slack " + std::to_string(out.slack) +
                                    " exceeds the requested accuracy");
    }
    Rng rng(seed, "shadow/bell");
    OutcomeSampler sampler(p);
    std::vector<std::size_t> samples = sampler.sample(budget.k, rng);
    ShadowAnswerer answerer(samples, static_cast<std::size_t>(p.size()), budget, seed);
    const Eigen::Index last_out = Eigen::Index{1} << comb.out_qubits.back();
    for (const auto &t : queries) {
        validate_tester(t, last_out);
        out.answers.push_back(answerer.answer_coefficients(tester_coefficients(t, comb.in_qubits, comb.out_qubits)));
    }
    return out;
}

}  // namespace qonline
