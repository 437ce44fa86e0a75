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

#include "qonline/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qonline/bounds.hpp"

namespace qonline {

Mwu::Mwu(Eigen::Index d, double eta, UpdateRule rule) : w_(RealVector::Ones(d)), eta_(eta), rule_(rule) {
    if (d < 1) {
        throw std::invalid_argument("Mwu: need at least one decision");
    }
    if (!(eta > 0) || (rule == UpdateRule::kLinear && eta > 0.5)) {
        throw std::invalid_argument("Mwu: learning rate out of range");
    }
}

void Mwu::update(const RealVector &m) {
    if (m.size() != w_.size()) {
        throw std::invalid_argument("Mwu::update: loss vector has the wrong length");
    }
    if (m.minCoeff() < -1 - 1e-12 || m.maxCoeff() > 1 + 1e-12) {
        throw std::out_of_range("Mwu::update: loss entry outside [-1, 1]");
    }
    if (rule_ == UpdateRule::kLinear) {
        w_ = w_.cwiseProduct((1.0 - eta_ * m.array().max(-1.0).min(1.0)).matrix());
    } else {
        w_ = w_.cwiseProduct((-eta_ * m.array()).exp().matrix());
    }
    rounds_++;
    if (rounds_ % kRenormalizeEvery == 0) {
        w_ /= w_.sum();
    }
}

double default_eta(Eigen::Index d, long horizon) {
    if (horizon <= 0) {
        throw std::invalid_argument("default_eta: horizon must be positive");
    }
    return std::min(0.5, std::sqrt(std::log(static_cast<double>(d)) / static_cast<double>(horizon)));
}

LipschitzLoss LipschitzLoss::absolute() { return LipschitzLoss{LossKind::kAbsolute, 1.0, {}, {}}; }

LipschitzLoss LipschitzLoss::squared() { return LipschitzLoss{LossKind::kSquared, 2.0, {}, {}}; }

LipschitzLoss LipschitzLoss::custom(std::function<double(double)> value, std::function<double(double)> derivative,
                                    double lipschitz) {
    return LipschitzLoss{LossKind::kCustom, lipschitz, std::move(value), std::move(derivative)};
}

double LipschitzLoss::value(double y, double b) const {
    const double r = y - b;
    switch (kind) {
        case LossKind::kAbsolute:
            return std::abs(r);
        case LossKind::kSquared:
            return r * r;
        case LossKind::kCustom:
            return custom_value(r);
    }
    return 0;
}

double LipschitzLoss::derivative(double y, double b) const {
    const double r = y - b;
    switch (kind) {
        case LossKind::kAbsolute:
            return r > 0 ? 1.0 : (r < 0 ? -1.0 : 0.0);
        case LossKind::kSquared:
            return 2 * r;
        case LossKind::kCustom:
            return custom_derivative(r);
    }
    return 0;
}

MixtureLearner::MixtureLearner(Eigen::Index k, double eta, LipschitzLoss loss, UpdateRule rule)
    : mwu_(k, eta, rule), loss_(std::move(loss)) {}

double MixtureLearner::predict(const RealVector &features) const {
    if (features.size() != mwu_.dim()) {
        throw std::invalid_argument("MixtureLearner: feature vector has the wrong length");
    }
    return mwu_.predict().dot(features);
}

RealVector MixtureLearner::loss_vector(const RealVector &features, double feedback) const {
    const double y = predict(features);
    RealVector m = (loss_.derivative(y, feedback) / loss_.lipschitz) * features;
    if (m.size() > 0 && (m.minCoeff() < -1 - 1e-9 || m.maxCoeff() > 1 + 1e-9)) {
        throw std::domain_error("MixtureLearner: loss vector outside [-1, 1]; test operator is not valid");
    }
    return m.cwiseMax(-1.0).cwiseMin(1.0);
}

void MixtureLearner::update(const RealVector &features, double feedback) {
    mwu_.update(loss_vector(features, feedback));
}

RealVector mixture_features(const Matrix &e, const std::vector<Matrix> &basis) {
    RealVector f(basis.size());
    for (std::size_t j = 0; j < basis.size(); j++) {
        f(j) = born_value(e, basis[j]);
    }
    return f;
}

namespace {

RoundOutcome learner_round(MixtureLearner &learner, const RealVector &f, double feedback) {
    if (std::abs(feedback) > 1 + 1e-12) {
        throw std::invalid_argument("learner round: feedback outside [-1, 1]");
    }
    RoundOutcome out;
    out.prediction = learner.predict(f);
    out.loss = learner.loss().value(out.prediction, feedback);
    out.m = learner.loss_vector(f, feedback);
    learner.update(f, feedback);
    return out;
}

}  // namespace

RoundOutcome pauli_learner_round(MixtureLearner &learner, const TestOperator &e, double feedback) {
    return learner_round(learner, bell_coefficients(e.op), feedback);
}

RoundOutcome mixture_learner_round(MixtureLearner &learner, const std::vector<Matrix> &basis, const Matrix &e,
                                   double feedback) {
    if (static_cast<Eigen::Index>(basis.size()) != learner.size()) {
        throw std::invalid_argument("mixture_learner_round: basis size does not match learner");
    }
    return learner_round(learner, mixture_features(e, basis), feedback);
}

Mmw::Mmw(Eigen::Index dim, double eta) : cumulative_(Matrix::Zero(dim, dim)), eta_(eta) {
    if (!(eta > 0) || eta > 1) {
        throw std::invalid_argument("Mmw: learning rate must lie in (0, 1]");
    }
}

namespace {

// exp(k) / Tr exp(k) together with its logarithm, computed with a shift.
void gibbs(const Matrix &k, Matrix &rho, Matrix *log_rho, double *log_partition) {
    Matrix h = (k + k.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const RealVector &vals = es.eigenvalues();
    const double top = vals.maxCoeff();
    RealVector w = (vals.array() - top).exp().matrix();
    const double z = w.sum();
    const double log_z = top + std::log(z);
    const Matrix &u = es.eigenvectors();
    rho = u * (w / z).cast<Complex>().asDiagonal() * u.adjoint();
    if (log_rho) {
        *log_rho = u * (vals.array() - log_z).matrix().cast<Complex>().asDiagonal() * u.adjoint();
    }
    if (log_partition) {
        *log_partition = log_z;
    }
}

Projection project_from_log(const Matrix &log_omega, Eigen::Index d_a, Eigen::Index d_b, double tol,
                            int max_iterations) {
    if (log_omega.rows() != d_a * d_b) {
        throw std::invalid_argument("bregman_project: dimension mismatch");
    }
    const Matrix target = identity(d_a) / static_cast<double>(d_a);
    const Matrix id_b = identity(d_b);

    struct Point {
        Matrix lambda, rho, log_rho, grad;
        double h = 0, residual = 0;
    };
    auto evaluate = [&](const Matrix &lambda) {
        Point p;
        p.lambda = lambda;
        double log_z = 0;
        gibbs(log_omega - kron(lambda, id_b), p.rho, &p.log_rho, &log_z);
        p.h = log_z + std::real(lambda.trace()) / static_cast<double>(d_a);
        p.grad = target - partial_trace(p.rho, d_a, d_b, Keep::kA);
        p.grad = (p.grad + p.grad.adjoint()) / 2;
        p.residual = p.grad.norm();
        return p;
    };

    Point cur = evaluate(Matrix::Zero(d_a, d_a));
    Point prev;
    bool have_prev = false;
    int it = 0;
    for (; it < max_iterations && cur.residual > tol; it++) {
        double step = 1.0;
        if (have_prev) {
            Matrix s = cur.lambda - prev.lambda;
            Matrix y = cur.grad - prev.grad;
            double sy = std::real(trace_product(s.adjoint(), y));
            if (sy > 0) {
                step = std::clamp(s.squaredNorm() / sy, 1e-3, 1e3);
            }
        }
        const double g2 = cur.grad.squaredNorm();
        Point next;
        bool accepted = false;
        for (int back = 0; back < 60; back++) {
            next = evaluate(cur.lambda - step * cur.grad);
            bool armijo = next.h <= cur.h - 1e-4 * step * g2;
            bool flat = next.h <= cur.h + 1e-14 * std::max(1.0, std::abs(cur.h)) && next.residual < cur.residual;
            if (armijo || flat) {
                accepted = true;
                break;
            }
            step /= 2;
        }
        if (!accepted) {
            break;
        }
        prev = std::move(cur);
        have_prev = true;
        cur = std::move(next);
    }
    Projection out;
    out.rho = std::move(cur.rho);
    out.log_rho = std::move(cur.log_rho);
    out.lambda = std::move(cur.lambda);
    out.residual = cur.residual;
    out.iterations = it;
    out.converged = cur.residual <= tol;
    return out;
}

}  // namespace

Matrix Mmw::iterate() const {
    Matrix rho;
    gibbs(-eta_ * cumulative_, rho, nullptr, nullptr);
    return rho;
}

void Mmw::update(const Matrix &loss) {
    if (loss.rows() != cumulative_.rows() || loss.cols() != cumulative_.cols()) {
        throw std::invalid_argument("Mmw::update: loss matrix has the wrong shape");
    }
    if (spectral_norm(loss) > 1 + 1e-10) {
        throw std::out_of_range("Mmw::update: loss matrix has spectral norm above one");
    }
    cumulative_ += (loss + loss.adjoint()) / 2;
}

Projection bregman_project(const Matrix &omega, Eigen::Index d_a, Eigen::Index d_b, double tol,
                           int max_iterations) {
    return project_from_log(matrix_log(omega), d_a, d_b, tol, max_iterations);
}

ProjectedMmw::ProjectedMmw(Eigen::Index d_a, Eigen::Index d_b, MirrorMode mode, double eta)
    : d_a_(d_a), d_b_(d_b), mode_(mode), eta_(eta) {
    if (!(eta > 0) || eta > 1) {
        throw std::invalid_argument("ProjectedMmw: learning rate must lie in (0, 1]");
    }
    const Eigen::Index d = d_a * d_b;
    log_w_ = Matrix::Zero(d, d);
    rho_ = identity(d) / static_cast<double>(d);
    log_rho_ = -std::log(static_cast<double>(d)) * identity(d);
}

void ProjectedMmw::update(const Matrix &loss) {
    if (loss.rows() != rho_.rows()) {
        throw std::invalid_argument("ProjectedMmw::update: loss matrix has the wrong shape");
    }
    if (spectral_norm(loss) > 1 + 1e-10) {
        throw std::out_of_range("ProjectedMmw::update: loss matrix has spectral norm above one");
    }
    Matrix h = (loss + loss.adjoint()) / 2;
    Matrix y;
    if (mode_ == MirrorMode::kLazy) {
        log_w_ -= eta_ * h;
        y = log_w_;
    } else {
        y = log_rho_ - eta_ * h;
    }
    Projection p = project_from_log(y, d_a_, d_b_, 1e-9, 500);
    if (!p.converged && p.residual > 1e-8) {
        throw std::runtime_error("ProjectedMmw: projection did not converge (residual " +
                                 std::to_string(p.residual) + ")");
    }
    rho_ = std::move(p.rho);
    log_rho_ = std::move(p.log_rho);
    last_residual_ = p.residual;
    last_iterations_ = p.iterations;
}

double mirror_descent_slack(MirrorMode mode, double eta, double sum_sq_norms, Eigen::Index dim,
                            double entropy_sigma) {
    const double c = mode == MirrorMode::kAgile ? 0.5 : 2.0;
    return c * eta * sum_sq_norms + (std::log(static_cast<double>(dim)) - entropy_sigma) / eta;
}

double mmw_slack(double eta, double sum_sq_terms, Eigen::Index dim, double entropy_rho) {
    return eta * sum_sq_terms + (std::log(static_cast<double>(dim)) - entropy_rho) / eta;
}

MistakeDriven::MistakeDriven(MixtureLearner inner, double epsilon) : inner_(std::move(inner)), epsilon_(epsilon) {
    if (!(epsilon > 0)) {
        throw std::invalid_argument("MistakeDriven: epsilon must be positive");
    }
}

MistakeDriven MistakeDriven::for_mixture(Eigen::Index k, double epsilon, LipschitzLoss loss) {
    const double eta = epsilon / (3 * loss.lipschitz);
    return MistakeDriven(MixtureLearner(k, eta, std::move(loss)), epsilon);
}

StepOutcome MistakeDriven::round(const RealVector &features, double feedback) {
    StepOutcome out;
    out.prediction = inner_.predict(features);
    out.loss = inner_.loss().value(out.prediction, feedback);
    out.mistake = out.loss > epsilon_;
    rounds_++;
    if (out.mistake) {
        mistakes_++;
        inner_.update(features, feedback);
    }
    return out;
}

long MistakeDriven::budget() const {
    return mixture_mistake_budget(inner_.size(), inner_.loss().lipschitz, epsilon_);
}

Transcript run_mistake_driven(MistakeDriven &learner, const std::vector<StreamItem> &stream) {
    Transcript tr;
    double regret = 0;
    for (const auto &item : stream) {
        TranscriptRow row;
        row.t = learner.rounds() + 1;
        row.challenge_digest = item.digest;
        row.entropy = shannon_entropy(learner.inner().distribution());
        StepOutcome s = learner.round(item.features, item.feedback);
        row.prediction = s.prediction;
        row.feedback = item.feedback;
        row.loss = s.loss;
        row.mistake = s.mistake;
        regret += s.loss - learner.inner().loss().value(item.truth, item.feedback);
        row.cumulative_regret = regret;
        tr.rows.push_back(std::move(row));
    }
    tr.mistakes = learner.mistakes();
    tr.bound_name = "mistakes <= 9 L^2 ln K / eps^2";
    tr.bound_value = static_cast<double>(learner.budget());
    tr.bound_satisfied = tr.mistakes <= learner.budget();
    return tr;
}

std::vector<double> order_key(const RealVector &features) {
    std::vector<double> key(features.size());
    for (Eigen::Index i = 0; i < features.size(); i++) {
        double v = std::round(features(i) * 1e12) / 1e12;
        key[i] = v == 0 ? 0.0 : v;
    }
    return key;
}

CompressedSet one_pass_compress(const std::vector<LabeledPoint> &data, double epsilon, LipschitzLoss loss) {
    CompressedSet out;
    out.epsilon = epsilon;
    out.loss = loss;
    if (data.empty()) {
        return out;
    }
    out.k = data.front().features.size();
    std::vector<std::vector<double>> keys;
    for (const auto &p : data) {
        keys.push_back(order_key(p.features));
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    MistakeDriven learner = MistakeDriven::for_mixture(out.k, epsilon, loss);
    for (std::size_t i : order) {
        if (learner.round(data[i].features, data[i].label).mistake) {
            out.points.push_back(data[i]);
            out.keys.push_back(keys[i]);
            out.source_indices.push_back(i);
        }
    }
    return out;
}

double one_pass_reconstruct(const CompressedSet &set, const RealVector &query) {
    if (set.points.empty()) {
        return MixtureLearner(std::max<Eigen::Index>(query.size(), 1), set.epsilon / (3 * set.loss.lipschitz),
                              set.loss)
            .predict(query);
    }
    const std::vector<double> key = order_key(query);
    for (std::size_t j = 0; j < set.points.size(); j++) {
        if (set.keys[j] == key) {
            return set.points[j].label;
        }
    }
    MistakeDriven learner = MistakeDriven::for_mixture(set.k, set.epsilon, set.loss);
    for (std::size_t j = 0; j < set.points.size() && set.keys[j] < key; j++) {
        learner.round(set.points[j].features, set.points[j].label);
    }
    return learner.predict(query);
}

}  // namespace qonline
