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

#ifndef QONLINE_SHADOW_HPP
#define QONLINE_SHADOW_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qonline/channels.hpp"
#include "qonline/combs.hpp"
#include "qonline/rng.hpp"

namespace qonline {

/// Draws outcomes from a fixed distribution over Pauli labels.
class OutcomeSampler {
   public:
    explicit OutcomeSampler(const RealVector &distribution);

    std::size_t sample(Rng &rng) { return dist_(rng.engine()); }
    std::vector<std::size_t> sample(std::size_t k, Rng &rng);
    const RealVector &distribution() const { return p_; }

   private:
    RealVector p_;
    std::discrete_distribution<std::size_t> dist_;
};

/// Outcome distribution Tr[Phi^{z,x} Phi^N] of a Bell measurement on the Choi
/// state, equal to the Pauli-twirl error rates.
RealVector bell_distribution(const Channel &ch);
PauliIndex bell_sample(const Channel &ch, Rng &rng);
std::vector<std::size_t> bell_samples(const Channel &ch, std::size_t k, Rng &rng);

RealVector empirical_distribution(const std::vector<std::size_t> &samples, std::size_t size);

enum class Mechanism { kNaive, kSplitNoise };

struct QueryBudget {
    std::size_t k = 0;
    double epsilon = 0.1;
    double delta = 0.05;
    std::size_t m = 0;
    Mechanism mechanism = Mechanism::kNaive;
};

void validate_budget(const QueryBudget &b);

/// Answers statistical queries e -> E_{(z,x)~p}[e_{z,x}] from Bell samples.
///
/// The naive mechanism returns the empirical mean over all samples. The
/// split-noise mechanism answers query i from the i-th of floor(sqrt(k))
/// disjoint sample blocks and adds Gaussian noise of standard deviation
/// epsilon/6.
class ShadowAnswerer {
   public:
    ShadowAnswerer(const std::vector<std::size_t> &samples, std::size_t outcomes, QueryBudget budget, uint64_t seed);

    double answer(const TestOperator &e);
    double answer_coefficients(const RealVector &e);

    std::size_t answered() const { return answered_; }
    std::size_t blocks() const { return blocks_.size(); }
    /// Per-query deviation that holds with probability at least 1 - delta on
    /// non-adaptive streams.
    double advertised_tolerance() const;

   private:
    QueryBudget budget_;
    uint64_t seed_;
    RealVector full_;
    std::vector<RealVector> blocks_;
    std::size_t block_size_ = 0;
    std::size_t answered_ = 0;
};

/// Exact statistical-query value p . e (the infinite-sample limit).
double exact_answer(const RealVector &distribution, const RealVector &e);

/// Half the Choi trace-norm distance between a channel and its twirl, an
/// upper bound on half their diamond distance.
double twirl_slack(const Channel &ch);

struct TwirledShadowResult {
    std::vector<double> answers;
    double slack = 0;
};

/// Answers queries about `ch` from Bell samples of its twirl. Throws when the
/// slack is not below budget.epsilon unless `allow_large_slack` is set.
TwirledShadowResult twirled_shadow(const Channel &ch, const std::vector<TestOperator> &queries,
                                   const QueryBudget &budget, uint64_t seed, bool allow_large_slack = false);

struct CombShadowResult {
    std::vector<double> answers;
    double slack = 0;
};

/// Coefficients Tr[E Gamma^{joint}] of a tester against every time-local
/// Pauli label.
RealVector tester_coefficients(const Tester &t, const std::vector<int> &in_qubits,
                               const std::vector<int> &out_qubits);

CombShadowResult comb_shadow(const Comb &comb, const std::vector<Tester> &queries, const QueryBudget &budget,
                             uint64_t seed);

}  // namespace qonline

#endif  // QONLINE_SHADOW_HPP
