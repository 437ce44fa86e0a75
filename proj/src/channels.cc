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

#include "qonline/channels.hpp"

#include <bit>

#include "qonline/random.hpp"

namespace qonline {

namespace {

int parity(std::size_t v) { return std::popcount(v) & 1; }

// Sign matrix S(z, i) = (-1)^{z.i}.
Eigen::MatrixXd walsh_signs(Eigen::Index d) {
    Eigen::MatrixXd s(d, d);
    for (Eigen::Index z = 0; z < d; z++) {
        for (Eigen::Index i = 0; i < d; i++) {
            s(z, i) = parity(static_cast<std::size_t>(z & i)) ? -1.0 : 1.0;
        }
    }
    return s;
}

Matrix kraus_sum(const std::vector<Matrix> &kraus) {
    Matrix s = Matrix::Zero(kraus.front().cols(), kraus.front().cols());
    for (const auto &k : kraus) {
        s += k.adjoint() * k;
    }
    return s;
}

Matrix choi_from_kraus(const std::vector<Matrix> &kraus) {
    const Eigen::Index d_in = kraus.front().cols();
    const Eigen::Index d_out = kraus.front().rows();
    Matrix c = Matrix::Zero(d_in * d_out, d_in * d_out);
    for (const auto &k : kraus) {
        // Column (i, b) of the vectorised Kraus operator is K|i> placed in block i.
        Vector v(d_in * d_out);
        for (Eigen::Index i = 0; i < d_in; i++) {
            v.segment(i * d_out, d_out) = k.col(i);
        }
        c.noalias() += v * v.adjoint();
    }
    return c;
}

}  // namespace

Channel channel_from_kraus(std::vector<Matrix> kraus, double tol) {
    if (kraus.empty()) {
        throw std::invalid_argument("channel_from_kraus: empty Kraus list");
    }
    Channel ch;
    ch.n_in = qubits_for_dim(kraus.front().cols());
    ch.n_out = qubits_for_dim(kraus.front().rows());
    for (const auto &k : kraus) {
        if (k.rows() != ch.dim_out() || k.cols() != ch.dim_in()) {
            throw std::invalid_argument("channel_from_kraus: Kraus operators differ in shape");
        }
    }
    ch.kraus = std::move(kraus);
    validate_channel(ch, tol);
    return ch;
}

Channel channel_from_choi(Matrix choi, int n_in, int n_out, double tol) {
    Channel ch;
    ch.n_in = n_in;
    ch.n_out = n_out;
    if (choi.rows() != ch.dim_in() * ch.dim_out() || choi.cols() != choi.rows()) {
        throw std::invalid_argument("channel_from_choi: Choi matrix has the wrong shape");
    }
    ch.choi = std::move(choi);
    validate_channel(ch, tol);
    return ch;
}

Channel unitary_channel(const Matrix &u) { return channel_from_kraus({u}); }

Channel identity_channel(int n) { return unitary_channel(identity(Eigen::Index{1} << n)); }

Channel depolarizing_channel(int n) {
    return pauli_channel(RealVector::Constant(num_paulis(n), 1.0 / static_cast<double>(num_paulis(n))));
}

Channel mix_channels(const std::vector<double> &weights, const std::vector<Channel> &channels) {
    if (weights.size() != channels.size() || channels.empty()) {
        throw std::invalid_argument("mix_channels: weights and channels differ in length");
    }
    std::vector<Matrix> kraus;
    for (std::size_t k = 0; k < channels.size(); k++) {
        if (weights[k] < 0) {
            throw std::invalid_argument("mix_channels: negative weight");
        }
        if (weights[k] == 0) {
            continue;
        }
        std::vector<Matrix> ks = channels[k].kraus ? *channels[k].kraus
                                                   : kraus_from_choi(choi_of(channels[k]), channels[k].dim_in(),
                                                                     channels[k].dim_out());
        for (auto &m : ks) {
            kraus.push_back(std::sqrt(weights[k]) * m);
        }
    }
    return channel_from_kraus(std::move(kraus));
}

Channel compose(const Channel &first, const Channel &second) {
    if (first.n_out != second.n_in) {
        throw std::invalid_argument("compose: output of first channel does not match input of second");
    }
    auto ka = first.kraus ? *first.kraus : kraus_from_choi(choi_of(first), first.dim_in(), first.dim_out());
    auto kb = second.kraus ? *second.kraus : kraus_from_choi(choi_of(second), second.dim_in(), second.dim_out());
    std::vector<Matrix> out;
    for (const auto &b : kb) {
        for (const auto &a : ka) {
            out.push_back(b * a);
        }
    }
    return channel_from_kraus(std::move(out));
}

Channel random_channel(int n_in, int n_out, Eigen::Index env_dim, Rng &rng) {
    const Eigen::Index d_in = Eigen::Index{1} << n_in;
    const Eigen::Index d_out = Eigen::Index{1} << n_out;
    Matrix v = haar_isometry(d_in, d_out * env_dim, rng);
    std::vector<Matrix> kraus(env_dim, Matrix::Zero(d_out, d_in));
    for (Eigen::Index e = 0; e < env_dim; e++) {
        for (Eigen::Index i = 0; i < d_out; i++) {
            kraus[e].row(i) = v.row(i * env_dim + e);
        }
    }
    return channel_from_kraus(std::move(kraus));
}

Matrix choi_of(const Channel &ch) {
    if (ch.choi) {
        return *ch.choi;
    }
    if (!ch.kraus) {
        throw std::invalid_argument("choi_of: channel has neither Kraus operators nor a Choi matrix");
    }
    return choi_from_kraus(*ch.kraus);
}

std::vector<Matrix> kraus_from_choi(const Matrix &choi, Eigen::Index d_in, Eigen::Index d_out) {
    Matrix h = (choi + choi.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    std::vector<Matrix> out;
    const double cutoff = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); k++) {
        double lam = es.eigenvalues()(k);
        if (lam <= cutoff) {
            continue;
        }
        Vector v = std::sqrt(lam) * es.eigenvectors().col(k);
        Matrix kr(d_out, d_in);
        for (Eigen::Index i = 0; i < d_in; i++) {
            kr.col(i) = v.segment(i * d_out, d_out);
        }
        out.push_back(std::move(kr));
    }
    return out;
}

void validate_channel(const Channel &ch, double tol) {
    const Eigen::Index d_in = ch.dim_in();
    const Eigen::Index d_out = ch.dim_out();
    if (ch.kraus) {
        double gap = (kraus_sum(*ch.kraus) - identity(d_in)).norm();
        if (gap > tol) {
            throw std::invalid_argument("channel: Kraus operators are not trace preserving (gap " +
                                        std::to_string(gap) + ")");
        }
    }
    if (ch.choi) {
        const Matrix &c = *ch.choi;
        if (!is_psd(c)) {
            throw std::invalid_argument("channel: Choi matrix is not positive semidefinite");
        }
        double gap = (partial_trace(c, d_in, d_out, Keep::kA) - identity(d_in)).norm();
        if (gap > tol) {
            throw std::invalid_argument("channel: Choi matrix violates Tr_B C = I (gap " + std::to_string(gap) +
                                        ")");
        }
    }
    if (ch.kraus && ch.choi) {
        double gap = (choi_from_kraus(*ch.kraus) - *ch.choi).norm();
        if (gap > tol) {
            throw std::invalid_argument("channel: Kraus and Choi representations disagree");
        }
    }
}

Matrix apply_choi(const Matrix &choi, Eigen::Index d_in, Eigen::Index d_out, const Matrix &x) {
    if (x.rows() != d_in || x.cols() != d_in || choi.rows() != d_in * d_out) {
        throw std::invalid_argument("apply_choi: dimension mismatch");
    }
    Matrix out = Matrix::Zero(d_out, d_out);
    for (Eigen::Index i = 0; i < d_in; i++) {
        for (Eigen::Index j = 0; j < d_in; j++) {
            if (x(i, j) != Complex(0)) {
                out += x(i, j) * choi.block(i * d_out, j * d_out, d_out, d_out);
            }
        }
    }
    return out;
}

Matrix apply_kraus(const std::vector<Matrix> &kraus, const Matrix &x) {
    if (kraus.empty() || x.rows() != kraus.front().cols()) {
        throw std::invalid_argument("apply_kraus: dimension mismatch");
    }
    Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
    for (const auto &k : kraus) {
        out.noalias() += k * x * k.adjoint();
    }
    return out;
}

Matrix apply_channel(const Channel &ch, const Matrix &rho) {
    if (ch.kraus) {
        return apply_kraus(*ch.kraus, rho);
    }
    return apply_choi(choi_of(ch), ch.dim_in(), ch.dim_out(), rho);
}

TestOperator product_test(const Matrix &rho, const Matrix &effect) {
    TestOperator e;
    e.certificate = rho.transpose();
    e.op = kron(*e.certificate, effect);
    return e;
}

void validate_test_operator(const TestOperator &e, double tol) {
    if (!is_psd(e.op, tol)) {
        throw std::invalid_argument("test operator is not positive semidefinite");
    }
    if (e.certificate) {
        const Matrix &s = *e.certificate;
        if (s.rows() == 0 || e.op.rows() % s.rows() != 0) {
            throw std::invalid_argument("test operator certificate has incompatible dimension");
        }
        if (!is_density(s)) {
            throw std::invalid_argument("test operator certificate is not a density operator");
        }
        Eigen::Index d_b = e.op.rows() / s.rows();
        if (min_eigenvalue(kron(s, identity(d_b)) - e.op) < -tol) {
            throw std::invalid_argument("test operator is not dominated by its certificate");
        }
    }
}

double born_value(const Matrix &e, const Matrix &choi) {
    if (e.rows() != choi.rows() || e.cols() != choi.cols()) {
        throw std::invalid_argument("born_value: dimension mismatch");
    }
    return std::real(trace_product(e, choi));
}

double product_born_value(const Matrix &rho, const Matrix &effect, const Matrix &choi) {
    const Eigen::Index d_in = rho.rows(), d_out = effect.rows();
    if (choi.rows() != d_in * d_out || choi.cols() != d_in * d_out) {
        throw std::invalid_argument("product_born_value: dimension mismatch");
    }
    Matrix image = Matrix::Zero(d_out, d_out);
    for (Eigen::Index j = 0; j < d_in; j++) {
        for (Eigen::Index i = 0; i < d_in; i++) {
            image.noalias() += rho(i, j) * choi.block(i * d_out, j * d_out, d_out, d_out);
        }
    }
    return std::real(effect.cwiseProduct(image.transpose()).sum());
}

double born_value(const TestOperator &e, const Channel &ch) {
    validate_test_operator(e);
    return born_value(e.op, choi_of(ch));
}

RealVector bell_coefficients(const Matrix &e) {
    const Eigen::Index dd = e.rows();
    Eigen::Index d = 1;
    while (d * d < dd) {
        d <<= 1;
    }
    if (d * d != dd || e.cols() != dd) {
        throw std::invalid_argument("bell_coefficients: operator is not on a doubled register");
    }
    const Eigen::MatrixXd s = walsh_signs(d);
    RealVector out(d * d);
    Matrix f(d, d);
    for (Eigen::Index x = 0; x < d; x++) {
        for (Eigen::Index i = 0; i < d; i++) {
            for (Eigen::Index j = 0; j < d; j++) {
                f(i, j) = e(i * d + (i ^ x), j * d + (j ^ x));
            }
        }
        Eigen::MatrixXd sf = s * f.real();
        RealVector col = sf.cwiseProduct(s).rowwise().sum();
        for (Eigen::Index z = 0; z < d; z++) {
            out(z * d + x) = col(z);
        }
    }
    return out;
}

void validate_error_rates(const RealVector &p) {
    qubits_for_error_rates(p);
    if (p.minCoeff() < -1e-12 || p.maxCoeff() > 1 + 1e-12) {
        throw std::invalid_argument("error rates: entry outside [0, 1]");
    }
    if (std::abs(p.sum() - 1.0) > 1e-9) {
        throw std::invalid_argument("error rates: entries do not sum to one");
    }
}

int qubits_for_error_rates(const RealVector &p) {
    int n = 0;
    while (static_cast<Eigen::Index>(num_paulis(n)) < p.size()) {
        n++;
    }
    if (n < 1 || static_cast<Eigen::Index>(num_paulis(n)) != p.size()) {
        throw std::invalid_argument("error rates: length is not 4^n");
    }
    return n;
}

Matrix pauli_choi(const RealVector &p) {
    const int n = qubits_for_error_rates(p);
    const Eigen::Index d = Eigen::Index{1} << n;
    const Eigen::MatrixXd s = walsh_signs(d);
    Matrix c = Matrix::Zero(d * d, d * d);
    for (Eigen::Index z = 0; z < d; z++) {
        for (Eigen::Index x = 0; x < d; x++) {
            double w = p(z * d + x);
            if (w == 0) {
                continue;
            }
            for (Eigen::Index i = 0; i < d; i++) {
                for (Eigen::Index j = 0; j < d; j++) {
                    c(i * d + (i ^ x), j * d + (j ^ x)) += w * s(z, i) * s(z, j);
                }
            }
        }
    }
    return c;
}

Channel pauli_channel(const RealVector &p) {
    validate_error_rates(p);
    const int n = qubits_for_error_rates(p);
    std::vector<Matrix> kraus;
    for (Eigen::Index k = 0; k < p.size(); k++) {
        if (p(k) > 0) {
            kraus.push_back(std::sqrt(p(k)) * pauli_operator(PauliIndex::from_flat(n, k)));
        }
    }
    Channel ch;
    ch.n_in = n;
    ch.n_out = n;
    ch.kraus = std::move(kraus);
    ch.choi = pauli_choi(p);
    validate_channel(ch);
    return ch;
}

RealVector pauli_twirl_choi(const Matrix &choi) {
    RealVector e = bell_coefficients(choi);
    const double d2 = static_cast<double>(choi.rows());
    return e / d2;
}

RealVector pauli_twirl(const Channel &ch) {
    if (ch.n_in != ch.n_out) {
        throw std::invalid_argument("pauli_twirl: channel is not square");
    }
    return pauli_twirl_choi(choi_of(ch));
}

Matrix bell_pinching(const Matrix &choi) {
    const int n = qubits_for_dim(choi.rows()) / 2;
    Matrix out = Matrix::Zero(choi.rows(), choi.cols());
    for (std::size_t k = 0; k < num_paulis(n); k++) {
        Vector v = bell_state(PauliIndex::from_flat(n, k));
        Complex w = v.dot(choi * v);
        out.noalias() += w * v * v.adjoint();
    }
    return out;
}

Matrix pauli_conjugation_average(const Matrix &choi) {
    const int n = qubits_for_dim(choi.rows()) / 2;
    Matrix out = Matrix::Zero(choi.rows(), choi.cols());
    for (std::size_t k = 0; k < num_paulis(n); k++) {
        Matrix p = pauli_operator(PauliIndex::from_flat(n, k));
        Matrix w = kron(p.conjugate(), p);
        out.noalias() += w.adjoint() * choi * w;
    }
    return out / static_cast<double>(num_paulis(n));
}

double diamond_distance_pauli(const RealVector &p, const RealVector &q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("diamond_distance_pauli: size mismatch");
    }
    return (p - q).cwiseAbs().sum();
}

double entangled_probe_distance(const Channel &a, const Channel &b) {
    Matrix delta = choi_of(a) - choi_of(b);
    return trace_norm(delta) / static_cast<double>(a.dim_in());
}

double choi_trace_norm_bound(const Channel &a, const Channel &b) { return trace_norm(choi_of(a) - choi_of(b)); }

double diamond_lower_bound_probe(const Channel &a, const Channel &b, int trials, Rng &rng) {
    if (trials <= 0) {
        throw std::invalid_argument("diamond_lower_bound_probe: trials must be positive");
    }
    if (a.n_in != b.n_in || a.n_out != b.n_out) {
        throw std::invalid_argument("diamond_lower_bound_probe: channel dimensions differ");
    }
    const Eigen::Index d_in = a.dim_in();
    const Eigen::Index d_out = a.dim_out();
    Matrix delta = choi_of(a) - choi_of(b);
    double best = trace_norm(delta) / static_cast<double>(d_in);
    for (int t = 0; t < trials; t++) {
        Matrix g = gaussian_matrix(d_in, d_in, rng);
        g /= g.norm();
        Matrix w = kron(g, identity(d_out));
        best = std::max(best, trace_norm(w * delta * w.adjoint()));
    }
    return best;
}

}  // namespace qonline
