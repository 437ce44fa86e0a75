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

#include "qonline/combs.hpp"

#include <algorithm>
#include <random>

namespace qonline {

std::vector<int> LabeledOperator::dims() const {
    std::vector<int> d;
    for (const auto &l : legs) {
        d.push_back(l.dim);
    }
    return d;
}

int LabeledOperator::position(const std::string &name) const {
    for (std::size_t k = 0; k < legs.size(); k++) {
        if (legs[k].name == name) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

LabeledOperator reorder(const LabeledOperator &x, const std::vector<std::string> &names) {
    if (names.size() != x.legs.size()) {
        throw std::invalid_argument("reorder: leg count mismatch");
    }
    std::vector<int> perm;
    LabeledOperator out;
    for (const auto &n : names) {
        int p = x.position(n);
        if (p < 0) {
            throw std::invalid_argument("reorder: unknown leg " + n);
        }
        perm.push_back(p);
        out.legs.push_back(x.legs[p]);
    }
    out.op = permute_subsystems(x.op, x.dims(), perm);
    return out;
}

LabeledOperator link(const LabeledOperator &x, const LabeledOperator &y) {
    std::vector<std::string> x_rest, shared, y_rest;
    Eigen::Index da = 1, ds = 1, db = 1;
    for (const auto &l : x.legs) {
        int p = y.position(l.name);
        if (p < 0) {
            x_rest.push_back(l.name);
            da *= l.dim;
        } else {
            if (y.legs[p].dim != l.dim) {
                throw std::invalid_argument("link: leg " + l.name + " has different dimensions");
            }
            shared.push_back(l.name);
            ds *= l.dim;
        }
    }
    for (const auto &l : y.legs) {
        if (x.position(l.name) < 0) {
            y_rest.push_back(l.name);
            db *= l.dim;
        }
    }
    std::vector<std::string> xo = x_rest, yo = shared;
    xo.insert(xo.end(), shared.begin(), shared.end());
    yo.insert(yo.end(), y_rest.begin(), y_rest.end());
    LabeledOperator xr = reorder(x, xo);
    LabeledOperator yr = reorder(y, yo);

    // R[(a,b),(a',b')] = sum_{s,s'} X[(a,s'),(a',s)] Y[(s',b),(s,b')], computed
    // as one matrix product after reshuffling both factors.
    Matrix xt(da * da, ds * ds), yt(ds * ds, db * db);
    for (Eigen::Index a = 0; a < da; a++) {
        for (Eigen::Index a2 = 0; a2 < da; a2++) {
            for (Eigen::Index s2 = 0; s2 < ds; s2++) {
                for (Eigen::Index s = 0; s < ds; s++) {
                    xt(a * da + a2, s2 * ds + s) = xr.op(a * ds + s2, a2 * ds + s);
                }
            }
        }
    }
    for (Eigen::Index s2 = 0; s2 < ds; s2++) {
        for (Eigen::Index s = 0; s < ds; s++) {
            for (Eigen::Index b = 0; b < db; b++) {
                for (Eigen::Index b2 = 0; b2 < db; b2++) {
                    yt(s2 * ds + s, b * db + b2) = yr.op(s2 * db + b, s * db + b2);
                }
            }
        }
    }
    Matrix r = xt * yt;
    LabeledOperator out;
    out.op.resize(da * db, da * db);
    for (Eigen::Index a = 0; a < da; a++) {
        for (Eigen::Index a2 = 0; a2 < da; a2++) {
            for (Eigen::Index b = 0; b < db; b++) {
                for (Eigen::Index b2 = 0; b2 < db; b2++) {
                    out.op(a * db + b, a2 * db + b2) = r(a * da + a2, b * db + b2);
                }
            }
        }
    }
    for (const auto &n : x_rest) {
        out.legs.push_back(xr.legs[xr.position(n)]);
    }
    for (const auto &n : y_rest) {
        out.legs.push_back(yr.legs[yr.position(n)]);
    }
    return out;
}

std::vector<int> Comb::leg_dims() const {
    std::vector<int> d;
    for (int k = 0; k < steps(); k++) {
        d.push_back(1 << in_qubits[k]);
        d.push_back(1 << out_qubits[k]);
    }
    return d;
}

std::vector<Leg> Comb::legs() const {
    std::vector<Leg> l;
    for (int k = 0; k < steps(); k++) {
        l.push_back({"A" + std::to_string(k + 1), 1 << in_qubits[k]});
        l.push_back({"B" + std::to_string(k + 1), 1 << out_qubits[k]});
    }
    return l;
}

namespace {

Matrix choi_from_kraus_list(const std::vector<Matrix> &kraus) {
    std::vector<Matrix> copy = kraus;
    Channel ch;
    ch.kraus = std::move(copy);
    return choi_of(ch);
}

LabeledOperator identity_on(const std::string &name, int dim) {
    return {identity(dim), {{name, dim}}};
}

std::vector<std::string> canonical_names(int r) {
    std::vector<std::string> names;
    for (int k = 1; k <= r; k++) {
        names.push_back("A" + std::to_string(k));
        names.push_back("B" + std::to_string(k));
    }
    return names;
}

}  // namespace

Comb comb_from_channel(const Channel &ch) {
    Comb c;
    c.in_qubits = {ch.n_in};
    c.out_qubits = {ch.n_out};
    c.op = choi_of(ch);
    return c;
}

Comb comb_from_channels(const std::vector<CombStep> &steps) {
    if (steps.empty()) {
        throw std::invalid_argument("comb_from_channels: no steps");
    }
    if (steps.front().mem_in != 1) {
        throw std::invalid_argument("comb_from_channels: first step cannot take memory input");
    }
    Comb comb;
    std::optional<LabeledOperator> acc;
    for (std::size_t k = 0; k < steps.size(); k++) {
        const CombStep &s = steps[k];
        if (k > 0 && s.mem_in != steps[k - 1].mem_out) {
            throw std::invalid_argument("comb_from_channels: memory dimensions do not chain");
        }
        const Eigen::Index d_in = s.mem_in << s.in_qubits;
        const Eigen::Index d_out = s.mem_out << s.out_qubits;
        for (const auto &kr : s.kraus) {
            if (kr.rows() != d_out || kr.cols() != d_in) {
                throw std::invalid_argument("comb_from_channels: Kraus shape does not match step dimensions");
            }
        }
        const std::string idx = std::to_string(k + 1);
        LabeledOperator step;
        step.op = choi_from_kraus_list(s.kraus);
        step.legs = {{"M" + std::to_string(k), static_cast<int>(s.mem_in)},
                     {"A" + idx, 1 << s.in_qubits},
                     {"M" + idx, static_cast<int>(s.mem_out)},
                     {"B" + idx, 1 << s.out_qubits}};
        acc = acc ? link(*acc, step) : step;
        comb.in_qubits.push_back(s.in_qubits);
        comb.out_qubits.push_back(s.out_qubits);
    }
    const std::string last = "M" + std::to_string(steps.size());
    acc = link(*acc, identity_on(last, static_cast<int>(steps.back().mem_out)));
    // Unit-dimension memory legs carry no information; drop them.
    LabeledOperator trimmed = *acc;
    trimmed.legs.clear();
    for (const auto &l : acc->legs) {
        if (l.name[0] == 'M') {
            if (l.dim != 1) {
                throw std::logic_error("comb_from_channels: memory leg left uncontracted");
            }
            continue;
        }
        trimmed.legs.push_back(l);
    }
    comb.op = reorder(trimmed, canonical_names(comb.steps())).op;
    return comb;
}

Comb comb_from_independent_channels(const std::vector<Channel> &channels) {
    std::vector<CombStep> steps;
    for (const auto &ch : channels) {
        CombStep s;
        s.kraus = ch.kraus ? *ch.kraus : kraus_from_choi(choi_of(ch), ch.dim_in(), ch.dim_out());
        s.in_qubits = ch.n_in;
        s.out_qubits = ch.n_out;
        steps.push_back(std::move(s));
    }
    return comb_from_channels(steps);
}

double CombReport::max_violation() const {
    return violations.empty() ? 0.0 : *std::max_element(violations.begin(), violations.end());
}

bool CombReport::valid(double tol) const { return max_violation() <= tol && min_eigenvalue >= -kPsdTolerance; }

Matrix comb_marginal(const Comb &comb, int k) {
    const int r = comb.steps();
    if (k < 1 || k > r) {
        throw std::invalid_argument("comb_marginal: step out of range");
    }
    std::vector<int> dims = comb.leg_dims();
    std::vector<bool> drop(dims.size(), false);
    double scale = 1;
    for (int j = k; j < r; j++) {
        drop[2 * j] = true;
        drop[2 * j + 1] = true;
        scale *= dims[2 * j];
    }
    return partial_trace(comb.op, dims, drop) / scale;
}

CombReport check_comb(const Matrix &op, const std::vector<int> &in_qubits, const std::vector<int> &out_qubits) {
    Comb c{in_qubits, out_qubits, op};
    return check_comb(c);
}

CombReport check_comb(const Comb &comb) {
    const int r = comb.steps();
    if (static_cast<int>(comb.out_qubits.size()) != r || r == 0) {
        throw std::invalid_argument("check_comb: inconsistent step dimensions");
    }
    Eigen::Index total = 1;
    for (int d : comb.leg_dims()) {
        total *= d;
    }
    if (comb.op.rows() != total) {
        throw std::invalid_argument("check_comb: operator size does not match dimensions");
    }
    CombReport report;
    report.min_eigenvalue = min_eigenvalue(comb.op);
    Matrix prev;
    for (int k = 1; k <= r; k++) {
        Matrix nk = comb_marginal(comb, k);
        const int da = 1 << comb.in_qubits[k - 1];
        std::vector<int> dims;
        for (int j = 0; j < k; j++) {
            dims.push_back(1 << comb.in_qubits[j]);
            dims.push_back(1 << comb.out_qubits[j]);
        }
        std::vector<bool> drop(dims.size(), false);
        drop.back() = true;
        Matrix reduced = partial_trace(nk, dims, drop);
        Matrix expected = k == 1 ? identity(da) : kron(prev, identity(da));
        report.violations.push_back((reduced - expected).norm());
        prev = nk;
    }
    return report;
}

Comb link_product(const Comb &first, const Comb &second, const Wiring &wiring) {
    LabeledOperator a{first.op, {}}, b{second.op, {}};
    for (int k = 0; k < first.steps(); k++) {
        a.legs.push_back({"a:A" + std::to_string(k), 1 << first.in_qubits[k]});
        a.legs.push_back({"a:B" + std::to_string(k), 1 << first.out_qubits[k]});
    }
    for (int k = 0; k < second.steps(); k++) {
        b.legs.push_back({"b:A" + std::to_string(k), 1 << second.in_qubits[k]});
        b.legs.push_back({"b:B" + std::to_string(k), 1 << second.out_qubits[k]});
    }
    for (const auto &[out_step, in_step] : wiring) {
        if (out_step < 0 || out_step >= first.steps() || in_step < 0 || in_step >= second.steps()) {
            throw std::invalid_argument("link_product: wiring refers to a missing step");
        }
        auto &leg = b.legs[2 * in_step];
        if (leg.name.rfind("b:A", 0) != 0) {
            throw std::invalid_argument("link_product: input leg wired twice");
        }
        if (leg.dim != a.legs[2 * out_step + 1].dim) {
            throw std::invalid_argument("link_product: wired legs differ in dimension");
        }
        leg.name = a.legs[2 * out_step + 1].name;
    }
    LabeledOperator r = link(a, b);
    Comb out;
    bool expect_input = true;
    for (const auto &l : r.legs) {
        bool is_input = l.name[2] == 'A';
        if (is_input != expect_input) {
            throw std::invalid_argument("link_product: wiring does not leave an alternating comb");
        }
        int q = qubits_for_dim(l.dim);
        (is_input ? out.in_qubits : out.out_qubits).push_back(q);
        expect_input = !expect_input;
    }
    if (!expect_input) {
        throw std::invalid_argument("link_product: wiring leaves a dangling input");
    }
    out.op = r.op;
    return out;
}

Comb link_product(const Comb &first, const Comb &second) {
    if (first.steps() != 1 || second.steps() != 1) {
        throw std::invalid_argument("link_product: sequential form needs single-step combs");
    }
    return link_product(first, second, {{0, 0}});
}

std::size_t joint_pauli_index(const std::vector<PauliIndex> &steps) {
    PauliIndex joint;
    for (const auto &s : steps) {
        joint.z.insert(joint.z.end(), s.z.begin(), s.z.end());
        joint.x.insert(joint.x.end(), s.x.begin(), s.x.end());
    }
    return joint.flat();
}

std::vector<PauliIndex> split_joint_index(std::size_t flat, const std::vector<int> &qubits) {
    int total = 0;
    for (int q : qubits) {
        total += q;
    }
    PauliIndex joint = PauliIndex::from_flat(total, flat);
    std::vector<PauliIndex> out;
    int offset = 0;
    for (int q : qubits) {
        out.emplace_back(std::vector<uint8_t>(joint.z.begin() + offset, joint.z.begin() + offset + q),
                         std::vector<uint8_t>(joint.x.begin() + offset, joint.x.begin() + offset + q));
        offset += q;
    }
    return out;
}

Matrix regroup_inputs_outputs(const Matrix &op, const std::vector<int> &in_qubits,
                              const std::vector<int> &out_qubits) {
    const int r = static_cast<int>(in_qubits.size());
    std::vector<int> dims, perm;
    for (int k = 0; k < r; k++) {
        dims.push_back(1 << in_qubits[k]);
        dims.push_back(1 << out_qubits[k]);
    }
    for (int k = 0; k < r; k++) {
        perm.push_back(2 * k);
    }
    for (int k = 0; k < r; k++) {
        perm.push_back(2 * k + 1);
    }
    return permute_subsystems(op, dims, perm);
}

Matrix regroup_inputs_outputs(const Comb &comb) {
    return regroup_inputs_outputs(comb.op, comb.in_qubits, comb.out_qubits);
}

RealVector time_local_distribution(const Comb &comb) {
    for (int k = 0; k < comb.steps(); k++) {
        if (comb.in_qubits[k] != comb.out_qubits[k]) {
            throw std::invalid_argument("time_local_distribution: step is not square");
        }
    }
    return pauli_twirl_choi(regroup_inputs_outputs(comb));
}

std::vector<PauliIndex> time_local_twirl_sample(const Comb &comb, Rng &rng) {
    RealVector p = time_local_distribution(comb).cwiseMax(0.0);
    std::discrete_distribution<std::size_t> dist(p.data(), p.data() + p.size());
    return split_joint_index(dist(rng.engine()), comb.in_qubits);
}

Tester product_tester(const std::vector<Matrix> &states, const std::vector<Matrix> &effects) {
    if (states.size() != effects.size() || states.empty()) {
        throw std::invalid_argument("product_tester: need one state and one effect per step");
    }
    Tester t;
    t.steps = static_cast<int>(states.size());
    Matrix e = identity(1), s = identity(1);
    for (std::size_t k = 0; k < states.size(); k++) {
        e = kron(kron(e, states[k].transpose()), effects[k]);
        s = kron(s, states[k].transpose());
        if (k + 1 < states.size()) {
            s = kron(s, effects[k]);
        }
    }
    t.op = e;
    t.certificate = s;
    return t;
}

Tester sequential_tester(const Matrix &input_state, const std::vector<std::vector<Matrix>> &intermediate,
                         const Matrix &final_effect, const std::vector<int> &in_qubits,
                         const std::vector<int> &out_qubits, Eigen::Index ancilla_dim) {
    const int r = static_cast<int>(in_qubits.size());
    if (static_cast<int>(intermediate.size()) != r - 1 || static_cast<int>(out_qubits.size()) != r) {
        throw std::invalid_argument("sequential_tester: need r-1 intermediate channels");
    }
    const int ra = static_cast<int>(ancilla_dim);
    auto build = [&](const Matrix &effect) {
        LabeledOperator acc{input_state, {{"A1", 1 << in_qubits[0]}, {"R0", ra}}};
        for (int k = 0; k < r - 1; k++) {
            LabeledOperator ch;
            ch.op = choi_from_kraus_list(intermediate[k]);
            ch.legs = {{"B" + std::to_string(k + 1), 1 << out_qubits[k]},
                       {"R" + std::to_string(k), ra},
                       {"A" + std::to_string(k + 2), 1 << in_qubits[k + 1]},
                       {"R" + std::to_string(k + 1), ra}};
            acc = link(acc, ch);
        }
        LabeledOperator fin{effect.transpose(), {{"B" + std::to_string(r), 1 << out_qubits[r - 1]},
                                                 {"R" + std::to_string(r - 1), ra}}};
        acc = link(acc, fin);
        return Matrix(reorder(acc, canonical_names(r)).op.transpose());
    };
    Tester t;
    t.steps = r;
    t.op = build(final_effect);
    Matrix full = build(identity(final_effect.rows()));
    const Eigen::Index db = Eigen::Index{1} << out_qubits[r - 1];
    t.certificate = partial_trace(full, full.rows() / db, db, Keep::kA) / static_cast<double>(db);
    return t;
}

void validate_tester(const Tester &t, Eigen::Index last_out_dim, double tol) {
    if (!is_psd(t.op, tol)) {
        throw std::invalid_argument("tester is not positive semidefinite");
    }
    if (t.certificate) {
        if (t.certificate->rows() * last_out_dim != t.op.rows()) {
            throw std::invalid_argument("tester certificate has incompatible dimension");
        }
        if (min_eigenvalue(kron(*t.certificate, identity(last_out_dim)) - t.op) < -tol) {
            throw std::invalid_argument("tester is not dominated by its certificate");
        }
    }
}

double tester_value(const Tester &t, const Comb &comb) { return born_value(t.op, comb.op); }

}  // namespace qonline
