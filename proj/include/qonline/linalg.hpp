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

#ifndef QONLINE_LINALG_HPP
#define QONLINE_LINALG_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qonline {

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = CMatrix<double>;
using Vector = CVector<double>;
using RealVector = Eigen::VectorXd;

inline constexpr double kPsdTolerance = 1e-8;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kLogFloor = 1e-300;

/// Pauli string label. Bit i of z and x refers to qubit i, qubit 0 being the
/// most significant tensor factor.
struct PauliIndex {
    std::vector<uint8_t> z;
    std::vector<uint8_t> x;

    PauliIndex() = default;
    PauliIndex(std::vector<uint8_t> z_bits, std::vector<uint8_t> x_bits);

    int num_qubits() const { return static_cast<int>(z.size()); }

    /// Position in the lexicographic order on (z bits, x bits).
    std::size_t flat() const;
    static PauliIndex from_flat(int n, std::size_t k);

    bool operator==(const PauliIndex &other) const = default;
};

inline PauliIndex::PauliIndex(std::vector<uint8_t> z_bits, std::vector<uint8_t> x_bits)
    : z(std::move(z_bits)), x(std::move(x_bits)) {
    if (z.size() != x.size()) {
        throw std::invalid_argument("PauliIndex: z and x bitstrings differ in length");
    }
}

inline std::size_t PauliIndex::flat() const {
    std::size_t zi = 0, xi = 0;
    for (std::size_t q = 0; q < z.size(); q++) {
        zi = (zi << 1) | (z[q] & 1);
        xi = (xi << 1) | (x[q] & 1);
    }
    return (zi << z.size()) | xi;
}

inline PauliIndex PauliIndex::from_flat(int n, std::size_t k) {
    std::vector<uint8_t> z(n), x(n);
    for (int q = 0; q < n; q++) {
        z[q] = (k >> (2 * n - 1 - q)) & 1;
        x[q] = (k >> (n - 1 - q)) & 1;
    }
    return PauliIndex(std::move(z), std::move(x));
}

inline std::size_t num_paulis(int n) { return std::size_t{1} << (2 * n); }

inline int qubits_for_dim(Eigen::Index d) {
    int n = 0;
    while ((Eigen::Index{1} << n) < d) {
        n++;
    }
    if ((Eigen::Index{1} << n) != d) {
        throw std::invalid_argument("dimension " + std::to_string(d) + " is not a power of two");
    }
    return n;
}

template <typename DerivedA, typename DerivedB>
CMatrix<typename DerivedA::RealScalar> kron(
    const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b) {
    CMatrix<typename DerivedA::RealScalar> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

template <typename Scalar = double>
CMatrix<Scalar> identity(Eigen::Index d) {
    return CMatrix<Scalar>::Identity(d, d);
}

/// Single-qubit factor i^{zx} Z^z X^x: I, X, Z, or iZX = -Y.
template <typename Scalar = double>
CMatrix<Scalar> single_qubit_pauli(int z, int x) {
    using C = std::complex<Scalar>;
    CMatrix<Scalar> m(2, 2);
    if (!z && !x) {
        m << C(1), C(0), C(0), C(1);
    } else if (!z && x) {
        m << C(0), C(1), C(1), C(0);
    } else if (z && !x) {
        m << C(1), C(0), C(0), C(-1);
    } else {
        m << C(0), C(0, 1), C(0, -1), C(0);
    }
    return m;
}

template <typename Scalar = double>
CMatrix<Scalar> pauli_operator(const PauliIndex &idx) {
    if (idx.num_qubits() < 1) {
        throw std::invalid_argument("pauli_operator: need at least one qubit");
    }
    CMatrix<Scalar> out = single_qubit_pauli<Scalar>(idx.z[0], idx.x[0]);
    for (int q = 1; q < idx.num_qubits(); q++) {
        out = kron(out, single_qubit_pauli<Scalar>(idx.z[q], idx.x[q]));
    }
    return out;
}

/// Bell vector (I (x) P^{z,x}) sum_i |i,i> / sqrt(d) on 2n qubits.
template <typename Scalar = double>
CVector<Scalar> bell_state(const PauliIndex &idx) {
    const Eigen::Index d = Eigen::Index{1} << idx.num_qubits();
    CMatrix<Scalar> p = pauli_operator<Scalar>(idx);
    CVector<Scalar> v = CVector<Scalar>::Zero(d * d);
    for (Eigen::Index i = 0; i < d; i++) {
        v.segment(i * d, d) = p.col(i);
    }
    return v / std::sqrt(static_cast<Scalar>(d));
}

template <typename Scalar = double>
CMatrix<Scalar> bell_projector(const PauliIndex &idx) {
    CVector<Scalar> v = bell_state<Scalar>(idx);
    return v * v.adjoint();
}

template <typename Derived>
typename Derived::RealScalar hermiticity_gap(const Eigen::MatrixBase<Derived> &m) {
    return (m - m.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived> &m) {
    return m.rows() == m.cols() &&
           hermiticity_gap(m) <= kHermitianTolerance * static_cast<double>(m.rows());
}

template <typename Derived>
typename Derived::RealScalar min_eigenvalue(const Eigen::MatrixBase<Derived> &m) {
    using Plain = CMatrix<typename Derived::RealScalar>;
    Plain h = (m + m.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<Plain> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived> &m, double tol = kPsdTolerance) {
    return is_hermitian(m) && min_eigenvalue(m) >= -tol;
}

template <typename Derived>
bool is_density(const Eigen::MatrixBase<Derived> &m) {
    return is_psd(m) && std::abs(m.trace() - 1.0) <= 1e-10;
}

/// Tr[A B] without forming the product.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar trace_product(
    const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b) {
    return a.transpose().cwiseProduct(b).sum();
}

enum class Keep { kA, kB };

/// Partial trace on a bipartite register of dimensions (dA, dB). `keep`
/// selects which factor survives.
template <typename Derived>
CMatrix<typename Derived::RealScalar> partial_trace(
    const Eigen::MatrixBase<Derived> &op, Eigen::Index dA, Eigen::Index dB, Keep keep) {
    if (op.rows() != dA * dB || op.cols() != dA * dB) {
        throw std::invalid_argument("partial_trace: dimensions do not match operator");
    }
    using Plain = CMatrix<typename Derived::RealScalar>;
    if (keep == Keep::kA) {
        Plain out = Plain::Zero(dA, dA);
        for (Eigen::Index i = 0; i < dA; i++) {
            for (Eigen::Index j = 0; j < dA; j++) {
                out(i, j) = op.block(i * dB, j * dB, dB, dB).trace();
            }
        }
        return out;
    }
    Plain out = Plain::Zero(dB, dB);
    for (Eigen::Index i = 0; i < dA; i++) {
        out += op.block(i * dB, i * dB, dB, dB);
    }
    return out;
}

/// Reorders tensor factors: output factor k is input factor perm[k].
template <typename Derived>
CMatrix<typename Derived::RealScalar> permute_subsystems(
    const Eigen::MatrixBase<Derived> &op, const std::vector<int> &dims, const std::vector<int> &perm) {
    const std::size_t r = dims.size();
    if (perm.size() != r) {
        throw std::invalid_argument("permute_subsystems: permutation size mismatch");
    }
    Eigen::Index total = 1;
    for (int d : dims) {
        total *= d;
    }
    if (op.rows() != total || op.cols() != total) {
        throw std::invalid_argument("permute_subsystems: dimensions do not match operator");
    }
    std::vector<Eigen::Index> in_stride(r);
    Eigen::Index s = 1;
    for (std::size_t k = r; k-- > 0;) {
        in_stride[k] = s;
        s *= dims[k];
    }
    // Map each output basis index to its input basis index.
    std::vector<Eigen::Index> to_in(total);
    std::vector<int> digit(r, 0);
    for (Eigen::Index out_idx = 0; out_idx < total; out_idx++) {
        Eigen::Index in_idx = 0;
        for (std::size_t k = 0; k < r; k++) {
            in_idx += digit[k] * in_stride[perm[k]];
        }
        to_in[out_idx] = in_idx;
        for (std::size_t k = r; k-- > 0;) {
            if (++digit[k] < dims[perm[k]]) {
                break;
            }
            digit[k] = 0;
        }
    }
    CMatrix<typename Derived::RealScalar> out(total, total);
    for (Eigen::Index i = 0; i < total; i++) {
        for (Eigen::Index j = 0; j < total; j++) {
            out(i, j) = op(to_in[i], to_in[j]);
        }
    }
    return out;
}

/// Traces out every factor whose entry in `trace_out` is true.
template <typename Derived>
CMatrix<typename Derived::RealScalar> partial_trace(
    const Eigen::MatrixBase<Derived> &op, const std::vector<int> &dims, const std::vector<bool> &trace_out) {
    std::vector<int> perm;
    Eigen::Index keep_dim = 1, drop_dim = 1;
    for (std::size_t k = 0; k < dims.size(); k++) {
        if (!trace_out[k]) {
            perm.push_back(static_cast<int>(k));
            keep_dim *= dims[k];
        }
    }
    for (std::size_t k = 0; k < dims.size(); k++) {
        if (trace_out[k]) {
            perm.push_back(static_cast<int>(k));
            drop_dim *= dims[k];
        }
    }
    return partial_trace(permute_subsystems(op, dims, perm), keep_dim, drop_dim, Keep::kA);
}

/// Partial transpose of the factors flagged in `transpose`.
template <typename Derived>
CMatrix<typename Derived::RealScalar> partial_transpose(
    const Eigen::MatrixBase<Derived> &op, const std::vector<int> &dims, const std::vector<bool> &transpose) {
    const std::size_t r = dims.size();
    Eigen::Index total = op.rows();
    std::vector<Eigen::Index> stride(r);
    Eigen::Index s = 1;
    for (std::size_t k = r; k-- > 0;) {
        stride[k] = s;
        s *= dims[k];
    }
    CMatrix<typename Derived::RealScalar> out(total, total);
    for (Eigen::Index i = 0; i < total; i++) {
        for (Eigen::Index j = 0; j < total; j++) {
            Eigen::Index ii = i, jj = j;
            for (std::size_t k = 0; k < r; k++) {
                if (!transpose[k]) {
                    continue;
                }
                Eigen::Index di = (i / stride[k]) % dims[k];
                Eigen::Index dj = (j / stride[k]) % dims[k];
                ii += (dj - di) * stride[k];
                jj += (di - dj) * stride[k];
            }
            out(ii, jj) = op(i, j);
        }
    }
    return out;
}

enum class HermFn { kExp, kLog, kClampedLog };

/// Applies a scalar function to a Hermitian matrix through its
/// eigendecomposition.
template <typename Derived, typename Fn>
CMatrix<typename Derived::RealScalar> apply_spectral(const Eigen::MatrixBase<Derived> &op, Fn &&fn) {
    using Plain = CMatrix<typename Derived::RealScalar>;
    Plain h = (op + op.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<Plain> es(h);
    Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1> vals = es.eigenvalues();
    for (Eigen::Index k = 0; k < vals.size(); k++) {
        vals(k) = fn(vals(k));
    }
    const Plain &u = es.eigenvectors();
    return u * vals.template cast<std::complex<typename Derived::RealScalar>>().asDiagonal() * u.adjoint();
}

template <typename Derived>
CMatrix<typename Derived::RealScalar> herm_fn(const Eigen::MatrixBase<Derived> &op, HermFn fn) {
    using R = typename Derived::RealScalar;
    switch (fn) {
        case HermFn::kExp:
            return apply_spectral(op, [](R v) { return std::exp(v); });
        case HermFn::kLog:
            return apply_spectral(op, [](R v) {
                if (!(v > 0)) {
                    throw std::domain_error("herm_fn: log of a matrix with a nonpositive eigenvalue");
                }
                return std::log(v);
            });
        case HermFn::kClampedLog:
            return apply_spectral(op, [](R v) { return std::log(std::max(v, static_cast<R>(kLogFloor))); });
    }
    throw std::invalid_argument("herm_fn: unknown function");
}

template <typename Derived>
CMatrix<typename Derived::RealScalar> matrix_exp(const Eigen::MatrixBase<Derived> &op) {
    return herm_fn(op, HermFn::kExp);
}

template <typename Derived>
CMatrix<typename Derived::RealScalar> matrix_log(const Eigen::MatrixBase<Derived> &op) {
    return herm_fn(op, HermFn::kClampedLog);
}

template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1> hermitian_eigenvalues(
    const Eigen::MatrixBase<Derived> &op) {
    using Plain = CMatrix<typename Derived::RealScalar>;
    Plain h = (op + op.adjoint()) / 2;
    Eigen::SelfAdjointEigenSolver<Plain> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

template <typename Derived>
typename Derived::RealScalar trace_norm(const Eigen::MatrixBase<Derived> &op) {
    return hermitian_eigenvalues(op).cwiseAbs().sum();
}

/// Operator norm of a Hermitian matrix.
template <typename Derived>
typename Derived::RealScalar spectral_norm(const Eigen::MatrixBase<Derived> &op) {
    return hermitian_eigenvalues(op).cwiseAbs().maxCoeff();
}

/// von Neumann entropy in nats.
template <typename Derived>
typename Derived::RealScalar entropy(const Eigen::MatrixBase<Derived> &rho) {
    using R = typename Derived::RealScalar;
    R h = 0;
    for (R v : hermitian_eigenvalues(rho)) {
        if (v > 0) {
            h -= v * std::log(v);
        }
    }
    return h;
}

/// Umegaki relative entropy D(rho || sigma) in nats, using the clamped log
/// on sigma.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar relative_entropy(
    const Eigen::MatrixBase<DerivedA> &rho, const Eigen::MatrixBase<DerivedB> &sigma) {
    return -entropy(rho) - std::real(trace_product(rho, matrix_log(sigma)));
}

inline double shannon_entropy(const RealVector &p) {
    double h = 0;
    for (double v : p) {
        if (v > 0) {
            h -= v * std::log(v);
        }
    }
    return h;
}

}  // namespace qonline

#endif  // QONLINE_LINALG_HPP
