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

#ifndef QONLINE_LEARNERS_HPP
#define QONLINE_LEARNERS_HPP

#include <functional>
#include <string>
#include <vector>

#include "qonline/channels.hpp"
#include "qonline/linalg.hpp"
#include "qonline/transcript.hpp"

namespace qonline {

enum class UpdateRule { kLinear, kExponential };

/// Multiplicative weights over d decisions. The linear rule multiplies by
/// (1 - eta m_i) and needs eta in (0, 1/2]; the exponential rule (Hedge)
/// multiplies by exp(-eta m_i).
class Mwu {
   public:
    Mwu(Eigen::Index d, double eta, UpdateRule rule = UpdateRule::kLinear);

    RealVector predict() const { return w_ / w_.sum(); }
    void update(const RealVector &m);

    Eigen::Index dim() const { return w_.size(); }
    double eta() const { return eta_; }
    UpdateRule rule() const { return rule_; }
    long rounds() const { return rounds_; }
    const RealVector &weights() const { return w_; }

    static constexpr int kRenormalizeEvery = 64;

   private:
    RealVector w_;
    double eta_;
    UpdateRule rule_;
    long rounds_ = 0;
};

/// min(1/2, sqrt(ln d / T)).
double default_eta(Eigen::Index d, long horizon);

enum class LossKind { kAbsolute, kSquared, kCustom };

/// Convex loss of the residual y - b with Lipschitz constant L on [-1, 1].
struct LipschitzLoss {
    LossKind kind = LossKind::kAbsolute;
    double lipschitz = 1.0;
    std::function<double(double)> custom_value;
    std::function<double(double)> custom_derivative;

    static LipschitzLoss absolute();
    static LipschitzLoss squared();
    static LipschitzLoss custom(std::function<double(double)> value, std::function<double(double)> derivative,
                                double lipschitz);

    double value(double y, double b) const;
    /// Derivative in y; the absolute loss uses sign(0) = 0.
    double derivative(double y, double b) const;
};

/// Learner for convex mixtures of K known hypotheses. Each round sees the
/// feature vector f_j = Tr[E N_j] and predicts the weighted mean of f.
class MixtureLearner {
   public:
    MixtureLearner(Eigen::Index k, double eta, LipschitzLoss loss = LipschitzLoss::absolute(),
                   UpdateRule rule = UpdateRule::kLinear);

    double predict(const RealVector &features) const;
    /// (1/L) l'(prediction) f, checked to lie in [-1, 1]^K.
    RealVector loss_vector(const RealVector &features, double feedback) const;
    void update(const RealVector &features, double feedback);

    RealVector distribution() const { return mwu_.predict(); }
    const Mwu &mwu() const { return mwu_; }
    const LipschitzLoss &loss() const { return loss_; }
    Eigen::Index size() const { return mwu_.dim(); }

   private:
    Mwu mwu_;
    LipschitzLoss loss_;
};

struct RoundOutcome {
    double prediction = 0;
    double loss = 0;
    RealVector m;
};

/// Features Tr[E N_j] for a list of basis Choi (or comb) operators.
RealVector mixture_features(const Matrix &e, const std::vector<Matrix> &basis);

/// One round over the 4^n Pauli error rates: predict, then update with b.
RoundOutcome pauli_learner_round(MixtureLearner &learner, const TestOperator &e, double feedback);
RoundOutcome mixture_learner_round(MixtureLearner &learner, const std::vector<Matrix> &basis, const Matrix &e,
                                   double feedback);

/// Matrix multiplicative weights: iterate exp(-eta sum L) / Tr.
class Mmw {
   public:
    Mmw(Eigen::Index dim, double eta);

    Matrix iterate() const;
    void update(const Matrix &loss);

    const Matrix &cumulative() const { return cumulative_; }
    double eta() const { return eta_; }

   private:
    Matrix cumulative_;
    double eta_;
};

struct Projection {
    Matrix rho;
    Matrix log_rho;
    Matrix lambda;
    double residual = 0;
    int iterations = 0;
    bool converged = false;
};

/// Relative-entropy projection of a density operator onto Choi states
/// {rho >= 0 : Tr_B rho = I_A / d_A}, by gradient descent with Armijo
/// backtracking on the dual variable Lambda_A.
Projection bregman_project(const Matrix &omega, Eigen::Index d_a, Eigen::Index d_b, double tol = 1e-9,
                           int max_iterations = 500);

enum class MirrorMode { kLazy, kAgile };

/// Mirror descent with von Neumann entropy over Choi states. Lazy steps
/// accumulate losses in the unprojected weights; agile steps restart from the
/// previous projected iterate.
class ProjectedMmw {
   public:
    ProjectedMmw(Eigen::Index d_a, Eigen::Index d_b, MirrorMode mode, double eta);

    const Matrix &iterate() const { return rho_; }
    void update(const Matrix &loss);

    MirrorMode mode() const { return mode_; }
    double eta() const { return eta_; }
    double last_residual() const { return last_residual_; }
    int last_iterations() const { return last_iterations_; }
    Eigen::Index d_a() const { return d_a_; }
    Eigen::Index d_b() const { return d_b_; }

   private:
    Eigen::Index d_a_, d_b_;
    MirrorMode mode_;
    double eta_;
    Matrix log_w_;
    Matrix rho_;
    Matrix log_rho_;
    double last_residual_ = 0;
    int last_iterations_ = 0;
};

/// Right-hand side of the mirror-descent regret inequality minus Tr[sigma sum L]:
/// c eta sum ||L||^2 + (ln dim - H(sigma)) / eta with c = 1/2 (agile) or 2 (lazy).
double mirror_descent_slack(MirrorMode mode, double eta, double sum_sq_norms, Eigen::Index dim,
                            double entropy_sigma);

/// Right-hand side of the matrix multiplicative weights inequality minus
/// Tr[rho sum L]: eta sum Tr[L^2 omega] + (ln d - H(rho)) / eta.
double mmw_slack(double eta, double sum_sq_terms, Eigen::Index dim, double entropy_rho);

struct StepOutcome {
    double prediction = 0;
    double loss = 0;
    bool mistake = false;
};

/// Updates the inner mixture learner only on rounds whose loss exceeds epsilon.
class MistakeDriven {
   public:
    MistakeDriven(MixtureLearner inner, double epsilon);
    /// Mixture learner with eta = epsilon / (3L), which keeps the number of
    /// epsilon-mistakes below 9 L^2 ln K / epsilon^2 on realizable streams.
    static MistakeDriven for_mixture(Eigen::Index k, double epsilon,
                                     LipschitzLoss loss = LipschitzLoss::absolute());

    double predict(const RealVector &features) const { return inner_.predict(features); }
    StepOutcome round(const RealVector &features, double feedback);

    long mistakes() const { return mistakes_; }
    long rounds() const { return rounds_; }
    double epsilon() const { return epsilon_; }
    const MixtureLearner &inner() const { return inner_; }
    long budget() const;

   private:
    MixtureLearner inner_;
    double epsilon_;
    long mistakes_ = 0;
    long rounds_ = 0;
};

struct StreamItem {
    RealVector features;
    double feedback = 0;
    double truth = 0;
    std::string digest;
};

Transcript run_mistake_driven(MistakeDriven &learner, const std::vector<StreamItem> &stream);

struct LabeledPoint {
    RealVector features;
    double label = 0;
};

/// Points kept by one pass of the mistake-driven learner over the data in
/// canonical order, with their order keys.
struct CompressedSet {
    double epsilon = 0;
    Eigen::Index k = 0;
    LipschitzLoss loss;
    std::vector<LabeledPoint> points;
    std::vector<std::vector<double>> keys;
    std::vector<std::size_t> source_indices;
};

/// Lexicographic order key: the feature vector rounded to 12 decimals.
std::vector<double> order_key(const RealVector &features);

CompressedSet one_pass_compress(const std::vector<LabeledPoint> &data, double epsilon,
                                LipschitzLoss loss = LipschitzLoss::absolute());
double one_pass_reconstruct(const CompressedSet &set, const RealVector &query);

}  // namespace qonline

#endif  // QONLINE_LEARNERS_HPP
