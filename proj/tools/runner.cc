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

#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "qonline/adversaries.hpp"
#include "qonline/bounds.hpp"
#include "qonline/combs.hpp"
#include "qonline/random.hpp"
#include "qonline/shadow.hpp"

namespace qonline::tools {

Check less_equal(std::string name, double lhs, double rhs, bool asserted) {
    return Check{std::move(name), lhs, rhs, asserted, lhs <= rhs};
}

bool RunResult::ok() const { return violations().empty(); }

std::vector<std::string> RunResult::violations() const {
    std::vector<std::string> out;
    for (const auto &c : checks) {
        if (c.asserted && !c.pass) {
            out.push_back(c.name);
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string transcript_csv(const Transcript &tr) {
    std::ostringstream os;
    os << "t,challenge_digest,prediction,feedback,loss,mistake,cumulative_regret,entropy\n";
    for (const auto &r : tr.rows) {
        os << r.t << ',' << r.challenge_digest << ',' << format_double(r.prediction) << ','
           << format_double(r.feedback) << ',' << format_double(r.loss) << ',' << (r.mistake ? 1 : 0) << ','
           << format_double(r.cumulative_regret) << ',' << format_double(r.entropy) << '\n';
    }
    return os.str();
}

nlohmann::json checks_json(const std::vector<Check> &checks) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &c : checks) {
        out.push_back({{"name", c.name},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"asserted", c.asserted},
                       {"result", c.pass ? "PASS" : "FAIL"}});
    }
    return out;
}

namespace {

LipschitzLoss loss_from_name(const std::string &name) {
    return name == "squared" ? LipschitzLoss::squared() : LipschitzLoss::absolute();
}

// Plays a realizable stream against either learner and records the
// transcript. `features_of` maps a challenge to the learner's feature vector.
LearningRun play_mixture(const RealizableAdversary &adv, long rounds, double epsilon, long k,
                         const std::function<RealVector(const Matrix &)> &features_of, const std::string &wrapper,
                         double eta, const LipschitzLoss &loss) {
    LearningRun out;
    const bool driven = wrapper == "mistake-driven";
    if (!driven && eta <= 0) {
        eta = default_eta(k, rounds);
    }
    MistakeDriven md = MistakeDriven::for_mixture(k, epsilon, loss);
    MixtureLearner plain(k, driven ? 0.5 : eta, loss);
    double regret = 0, linear_regret = 0, weighted_abs = 0;
    for (long t = 1; t <= rounds; t++) {
        Challenge c = adv.next(static_cast<uint64_t>(t));
        RealVector f = features_of(c.e.op);
        TranscriptRow row;
        row.t = t;
        row.challenge_digest = digest(c.e.op);
        row.entropy = shannon_entropy(driven ? md.inner().distribution() : plain.distribution());
        row.prediction = driven ? md.predict(f) : plain.predict(f);
        row.feedback = adv.feedback(static_cast<uint64_t>(t), row.prediction);
        if (driven) {
            StepOutcome s = md.round(f, row.feedback);
            row.loss = s.loss;
            row.mistake = s.mistake;
        } else {
            row.loss = loss.value(row.prediction, row.feedback);
            row.mistake = row.loss > epsilon;
            const RealVector m = plain.loss_vector(f, row.feedback);
            const RealVector p = plain.distribution();
            linear_regret += m.dot(p) - (loss.derivative(row.prediction, row.feedback) / loss.lipschitz) * c.truth;
            weighted_abs += m.cwiseAbs().dot(p);
            plain.update(f, row.feedback);
        }
        regret += row.loss - loss.value(c.truth, row.feedback);
        row.cumulative_regret = regret;
        out.transcript.mistakes += row.mistake;
        out.transcript.rows.push_back(std::move(row));
    }
    out.regret = regret;
    if (driven) {
        out.transcript.bound_name = "mistakes <= ceil(9 L^2 ln K / epsilon^2)";
        out.transcript.bound_value = static_cast<double>(md.budget());
    } else {
        out.transcript.bound_name = "regret <= L (eta T + ln K / eta)";
        out.transcript.bound_value = loss.lipschitz * mwu_regret_bound(eta, static_cast<double>(rounds), double(k));
    }
    const double lhs = driven ? static_cast<double>(out.transcript.mistakes) : regret;
    out.transcript.bound_satisfied = lhs <= out.transcript.bound_value;
    out.checks.push_back(less_equal(out.transcript.bound_name, lhs, out.transcript.bound_value));
    if (!driven) {
        out.checks.push_back(less_equal("sum m.(p - q) <= eta sum |m|.p + ln K / eta", linear_regret,
                                        eta * weighted_abs + std::log(static_cast<double>(k)) / eta, false));
    }
    return out;
}

std::vector<TestOperator> random_queries(int n, long m, uint64_t seed) {
    std::vector<TestOperator> out;
    const Eigen::Index d = Eigen::Index{1} << n;
    for (long i = 0; i < m; i++) {
        Rng rng(seed, "cli/query", static_cast<uint64_t>(i));
        out.push_back(product_test(random_density(d, rng), random_effect(d, rng)));
    }
    return out;
}

Channel shadow_channel(const std::string &kind, int n, Rng &rng) {
    if (kind == "pauli") {
        return pauli_channel(random_distribution(static_cast<Eigen::Index>(num_paulis(n)), rng));
    }
    if (kind == "random") {
        return random_channel(n, n, 2, rng);
    }
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Matrix u = h;
    for (int q = 1; q < n; q++) {
        u = kron(u, h);
    }
    return mix_channels({0.9, 0.1}, {unitary_channel(u), depolarizing_channel(n)});
}

QueryBudget budget_from(const ExperimentConfig &c) {
    QueryBudget b;
    b.k = static_cast<std::size_t>(c.samples);
    b.epsilon = c.epsilon;
    b.delta = c.delta;
    b.m = static_cast<std::size_t>(c.queries);
    b.mechanism = c.mechanism == "split-noise" ? Mechanism::kSplitNoise : Mechanism::kNaive;
    return b;
}

// Accuracy checks shared by the channel and comb shadow scenarios.
void shadow_checks(const QueryBudget &b, double max_error, double max_raw_error, double slack, double tolerance,
                   std::vector<Check> &checks) {
    checks.push_back(less_equal("twirl slack < epsilon", slack, b.epsilon - 1e-15));
    if (b.mechanism == Mechanism::kNaive) {
        const double needed = std::log(2.0 * static_cast<double>(b.m) / b.delta) / (2 * b.epsilon * b.epsilon);
        const bool enough = static_cast<double>(b.k) >= needed;
        checks.push_back(less_equal("max |answer - twirled truth| <= epsilon (prob >= 1 - delta)", max_error,
                                    b.epsilon, enough));
        checks.push_back(less_equal("max |answer - truth| <= epsilon + slack (prob >= 1 - delta)", max_raw_error,
                                    b.epsilon + slack, enough));
    } else {
        checks.push_back(less_equal("max |answer - twirled truth| <= per-query tolerance", max_error, tolerance, false));
    }
}

RunResult run_learning(const ExperimentConfig &c) {
    const uint64_t seed = *c.seed;
    const double eta = c.eta == "default" ? 0.0 : std::stod(c.eta);
    const LipschitzLoss loss = loss_from_name(c.loss);
    RunResult res;
    if (c.scenario == "learn-choi-mmw") {
        MirrorRun mr = learn_choi(c.n, c.rounds, c.epsilon, c.mode == "lazy" ? MirrorMode::kLazy : MirrorMode::kAgile,
                                  eta, seed, loss);
        res.csv = transcript_csv(mr.transcript);
        res.checks = mr.checks;
        res.summary["mistakes"] = mr.transcript.mistakes;
        res.summary["linear_regret"] = mr.linear_regret;
        res.summary["regret_slack"] = mr.slack;
        res.summary["max_constraint_residual"] = mr.max_residual;
        res.summary["rounds"] = mr.transcript.rows.size();
        return res;
    }
    LearningRun lr = c.scenario == "learn-pauli"
                         ? learn_pauli(c.n, c.rounds, c.epsilon, seed, c.wrapper, eta, loss)
                         : learn_mixture(c.n, c.k_hypotheses, c.rounds, c.epsilon, seed, c.wrapper, eta, loss);
    res.csv = transcript_csv(lr.transcript);
    res.checks = lr.checks;
    res.summary["mistakes"] = lr.transcript.mistakes;
    res.summary["cumulative_regret"] = lr.regret;
    res.summary["rounds"] = lr.transcript.rows.size();
    res.summary["bound"] = {{"name", lr.transcript.bound_name},
                            {"value", lr.transcript.bound_value},
                            {"satisfied", lr.transcript.bound_satisfied}};
    return res;
}

RunResult run_shadow(const ExperimentConfig &c) {
    const uint64_t seed = *c.seed;
    Rng rng(seed, "cli/hidden");
    Channel ch = shadow_channel(c.channel, c.n, rng);
    QueryBudget budget = budget_from(c);
    std::vector<TestOperator> queries = random_queries(c.n, c.queries, seed);
    TwirledShadowResult sh = twirled_shadow(ch, queries, budget, seed, true);
    Channel twirled = pauli_channel(pauli_twirl(ch));
    std::ostringstream csv;
    csv << "i,query_digest,answer,twirled_truth,truth,error\n";
    double max_error = 0, max_raw = 0;
    for (std::size_t i = 0; i < queries.size(); i++) {
        const double tt = born_value(queries[i], twirled);
        const double truth = born_value(queries[i], ch);
        max_error = std::max(max_error, std::abs(sh.answers[i] - tt));
        max_raw = std::max(max_raw, std::abs(sh.answers[i] - truth));
        csv << i << ',' << digest(queries[i].op) << ',' << format_double(sh.answers[i]) << ',' << format_double(tt)
            << ',' << format_double(truth) << ',' << format_double(std::abs(sh.answers[i] - tt)) << '\n';
    }
    Rng bell_rng(seed, "shadow/bell");
    ShadowAnswerer probe(bell_samples(ch, budget.k, bell_rng), num_paulis(c.n), budget, seed);
    RunResult res;
    res.csv = csv.str();
    shadow_checks(budget, max_error, max_raw, sh.slack, probe.advertised_tolerance(), res.checks);
    res.summary["slack"] = sh.slack;
    res.summary["max_error"] = max_error;
    res.summary["max_error_vs_raw_channel"] = max_raw;
    res.summary["advertised_tolerance"] = probe.advertised_tolerance();
    return res;
}

RunResult run_comb_shadow(const ExperimentConfig &c) {
    const uint64_t seed = *c.seed;
    Rng rng(seed, "cli/hidden");
    std::vector<Channel> steps;
    for (int k = 0; k < c.r; k++) {
        steps.push_back(shadow_channel(c.channel, c.n, rng));
    }
    Comb comb = comb_from_independent_channels(steps);
    QueryBudget budget = budget_from(c);
    const Eigen::Index d = Eigen::Index{1} << c.n;
    std::vector<Tester> queries;
    for (long i = 0; i < c.queries; i++) {
        Rng qr(seed, "cli/tester", static_cast<uint64_t>(i));
        std::vector<Matrix> states, effects;
        for (int k = 0; k < c.r; k++) {
            states.push_back(random_density(d, qr));
            effects.push_back(random_effect(d, qr));
        }
        queries.push_back(product_tester(states, effects));
    }
    RealVector p = time_local_distribution(comb);
    const double slack = trace_norm(Matrix(regroup_inputs_outputs(comb) - pauli_choi(p))) / 2;
    RunResult res;
    if (slack >= budget.epsilon) {
        res.checks.push_back(less_equal("twirl slack < epsilon", slack, budget.epsilon - 1e-15));
        res.csv = "i,tester_digest,answer,twirled_truth,truth,error\n";
        res.summary["slack"] = slack;
        return res;
    }
    CombShadowResult sh = comb_shadow(comb, queries, budget, seed);
    std::ostringstream csv;
    csv << "i,tester_digest,answer,twirled_truth,truth,error\n";
    double max_error = 0, max_raw = 0;
    for (std::size_t i = 0; i < queries.size(); i++) {
        const double tt = exact_answer(p, tester_coefficients(queries[i], comb.in_qubits, comb.out_qubits));
        const double truth = tester_value(queries[i], comb);
        max_error = std::max(max_error, std::abs(sh.answers[i] - tt));
        max_raw = std::max(max_raw, std::abs(sh.answers[i] - truth));
        csv << i << ',' << digest(queries[i].op) << ',' << format_double(sh.answers[i]) << ',' << format_double(tt)
            << ',' << format_double(truth) << ',' << format_double(std::abs(sh.answers[i] - tt)) << '\n';
    }
    res.csv = csv.str();
    shadow_checks(budget, max_error, max_raw, sh.slack, 0.0, res.checks);
    res.summary["slack"] = sh.slack;
    res.summary["max_error"] = max_error;
    res.summary["max_error_vs_raw_comb"] = max_raw;
    return res;
}

RunResult run_adversary(const ExperimentConfig &c) {
    const uint64_t seed = *c.seed;
    RunResult res;
    std::ostringstream csv;
    if (c.game == "all-zeros") {
        SparseReadLearner learner(static_cast<std::size_t>(c.reads_per_round), seed);
        HardnessGame game = all_zeros_adversary(c.n, learner);
        csv << "t,reads,prediction,rounded,feedback,mistake\n";
        for (std::size_t t = 0; t < game.predictions.size(); t++) {
            std::string reads;
            for (std::size_t j = 0; j < game.reads[t].size(); j++) {
                reads += (j ? ";" : "") + std::to_string(game.reads[t][j]);
            }
            csv << t + 1 << ',' << reads << ',' << format_double(game.predictions[t]) << ',' << game.rounded[t] << ','
                << game.claimed[t] << ',' << (game.rounded[t] != game.claimed[t] ? 1 : 0) << '\n';
        }
        const long budget = static_cast<long>((num_paulis(c.n) - 1) /
                                              static_cast<std::size_t>(c.reads_per_round));
        const bool verified = verify_certificate(game);
        res.checks.push_back(less_equal("certificate verified", verified ? 0.0 : 1.0, 0.0));
        res.checks.push_back(
            less_equal("forced mistakes >= floor((4^n - 1) / q)", -static_cast<double>(game.mistakes), -double(budget)));
        res.summary["mistakes"] = game.mistakes;
        res.summary["rounds"] = game.predictions.size();
        res.summary["hidden_index"] = game.certificate.hidden_index;
    } else {
        Rng rng(seed, "cli/function");
        std::vector<int> f(c.n);
        for (auto &v : f) {
            v = static_cast<int>(rng.below(2));
        }
        Channel ch = pauli_embedding_channel(f);
        MistakeDriven learner = MistakeDriven::for_mixture(static_cast<Eigen::Index>(num_paulis(c.n)), c.epsilon);
        csv << "t,value,prediction,rounded,mistake\n";
        double worst = 0;
        long mistakes = 0;
        for (int t = 1; t <= c.n; t++) {
            TestOperator e = pauli_embedding_test(c.n, t);
            const double value = born_value(e, ch);
            worst = std::max(worst, std::abs(value - f[t - 1]));
            RealVector feat = bell_coefficients(e.op);
            const double y = learner.predict(feat);
            const int rounded = round_prediction(y);
            mistakes += rounded != f[t - 1];
            learner.round(feat, f[t - 1]);
            csv << t << ',' << f[t - 1] << ',' << format_double(y) << ',' << rounded << ','
                << (rounded != f[t - 1] ? 1 : 0) << '\n';
        }
        res.checks.push_back(less_equal("max |Born value - f(t)| <= 1e-12", worst, 1e-12));
        res.summary["mistakes"] = mistakes;
    }
    res.csv = csv.str();
    return res;
}

RunResult run_bounds(const ExperimentConfig &c) {
    BoundQuery q{parse_bound_kind(c.bound), c.bound_params};
    BoundValue v = eval_bound(q);
    RunResult res;
    res.summary = {{"bound", bound_kind_name(q.which)},
                   {"params", c.bound_params},
                   {"value", v.value},
                   {"asserted", v.asserted},
                   {"formula", v.formula}};
    return res;
}

}  // namespace

LearningRun learn_pauli(int n, long rounds, double epsilon, uint64_t seed, const std::string &wrapper, double eta,
                        LipschitzLoss loss) {
    Rng rng(seed, "cli/hidden");
    RealVector p = random_distribution(static_cast<Eigen::Index>(num_paulis(n)), rng);
    RealizableAdversary adv(pauli_channel(p), epsilon, seed);
    return play_mixture(
        adv, rounds, epsilon, static_cast<long>(num_paulis(n)), [](const Matrix &e) { return bell_coefficients(e); },
        wrapper, eta, loss);
}

LearningRun learn_mixture(int n, long k, long rounds, double epsilon, uint64_t seed, const std::string &wrapper,
                          double eta, LipschitzLoss loss) {
    Rng rng(seed, "cli/basis");
    std::vector<Channel> basis;
    std::vector<Matrix> chois;
    for (long j = 0; j < k; j++) {
        basis.push_back(random_channel(n, n, 2, rng));
        chois.push_back(choi_of(basis.back()));
    }
    RealVector w = random_distribution(k, rng);
    RealizableAdversary adv(mix_channels(std::vector<double>(w.data(), w.data() + w.size()), basis), epsilon, seed);
    return play_mixture(
        adv, rounds, epsilon, k, [&](const Matrix &e) { return mixture_features(e, chois); }, wrapper, eta, loss);
}

MirrorRun learn_choi(int n, long rounds, double epsilon, MirrorMode mode, double eta, uint64_t seed,
                     LipschitzLoss loss) {
    Rng rng(seed, "cli/hidden");
    Channel hidden = random_channel(n, n, 1, rng);
    const Eigen::Index d_a = hidden.dim_in(), d_b = hidden.dim_out(), dim = d_a * d_b;
    const Matrix sigma = choi_of(hidden) / static_cast<double>(d_a);
    const double c = mode == MirrorMode::kAgile ? 0.5 : 2.0;
    if (eta <= 0) {
        eta = std::min(1.0, std::sqrt(std::log(static_cast<double>(dim)) / (c * static_cast<double>(rounds))));
    }
    RealizableAdversary adv(hidden, epsilon, seed);
    ProjectedMmw learner(d_a, d_b, mode, eta);
    MirrorRun out;
    Matrix total = Matrix::Zero(dim, dim);
    double incurred = 0, sq = 0, regret = 0;
    for (long t = 1; t <= rounds; t++) {
        Challenge ch = adv.next(static_cast<uint64_t>(t));
        const Matrix &rho = learner.iterate();
        out.max_residual = std::max(
            out.max_residual,
            (partial_trace(rho, d_a, d_b, Keep::kA) - identity(d_a) / static_cast<double>(d_a)).norm());
        TranscriptRow row;
        row.t = t;
        row.challenge_digest = digest(ch.e.op);
        row.entropy = entropy(rho);
        row.prediction = static_cast<double>(d_a) * trace_product(ch.e.op, rho).real();
        row.feedback = adv.feedback(static_cast<uint64_t>(t), row.prediction);
        row.loss = loss.value(row.prediction, row.feedback);
        row.mistake = row.loss > epsilon;
        regret += row.loss - loss.value(ch.truth, row.feedback);
        row.cumulative_regret = regret;
        Matrix l = (loss.derivative(row.prediction, row.feedback) / loss.lipschitz) * ch.e.op;
        incurred += trace_product(l, rho).real();
        sq += std::pow(spectral_norm(l), 2);
        total += l;
        learner.update(l);
        out.transcript.mistakes += row.mistake;
        out.transcript.rows.push_back(std::move(row));
    }
    out.max_residual = std::max(
        out.max_residual, (partial_trace(learner.iterate(), d_a, d_b, Keep::kA) - identity(d_a) / double(d_a)).norm());
    out.linear_regret = incurred - trace_product(sigma, total).real();
    out.slack = mirror_descent_slack(mode, eta, sq, dim, entropy(sigma));
    const std::string name = mode == MirrorMode::kAgile
                                 ? "sum Tr[L rho_t] - Tr[sigma sum L] <= (eta/2) sum ||L||^2 + (ln d - H(sigma))/eta"
                                 : "sum Tr[L rho_t] - Tr[sigma sum L] <= 2 eta sum ||L||^2 + (ln d - H(sigma))/eta";
    out.transcript.bound_name = name;
    out.transcript.bound_value = out.slack;
    out.transcript.bound_satisfied = out.linear_regret <= out.slack;
    out.checks.push_back(less_equal("||Tr_B rho - I/d_A||_F <= 1e-8", out.max_residual, 1e-8));
    out.checks.push_back(less_equal(name, out.linear_regret, out.slack));
    return out;
}

RunResult run(const ExperimentConfig &config) {
    validate_config(config);
    RunResult res;
    if (config.scenario.rfind("learn", 0) == 0) {
        res = run_learning(config);
    } else if (config.scenario == "shadow") {
        res = run_shadow(config);
    } else if (config.scenario == "comb-shadow") {
        res = run_comb_shadow(config);
    } else if (config.scenario == "adversary-game") {
        res = run_adversary(config);
    } else {
        return run_bounds(config);
    }
    res.summary["scenario"] = config.scenario;
    res.summary["seed"] = *config.seed;
    res.summary["checks"] = checks_json(res.checks);
    res.summary["all_asserted_pass"] = res.ok();
    return res;
}

void write_outputs(const RunResult &result, const std::string &dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    std::ofstream csv(base / "transcript.csv", std::ios::binary);
    csv << result.csv;
    std::ofstream summary(base / "summary.json", std::ios::binary);
    summary << result.summary.dump(2) << '\n';
    if (!csv || !summary) {
        throw std::runtime_error("failed to write outputs to " + dir);
    }
}

}  // namespace qonline::tools
