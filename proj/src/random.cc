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

#include "qonline/random.hpp"

namespace qonline {

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; j++) {
        for (Eigen::Index i = 0; i < rows; i++) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return g;
}

Matrix haar_isometry(Eigen::Index d_in, Eigen::Index d_out, Rng &rng) {
    if (d_out < d_in) {
        throw std::invalid_argument("haar_isometry: output dimension smaller than input");
    }
    Matrix g = gaussian_matrix(d_out, d_in, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d_out, d_in);
    Matrix r = qr.matrixQR().topRows(d_in).triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d_in; k++) {
        Complex diag = r(k, k);
        double mag = std::abs(diag);
        if (mag > 0) {
            q.col(k) *= diag / mag;
        }
    }
    return q;
}

Matrix haar_unitary(Eigen::Index d, Rng &rng) { return haar_isometry(d, d, rng); }

Vector random_pure_state(Eigen::Index d, Rng &rng) {
    Vector v = gaussian_matrix(d, 1, rng).col(0);
    return v / v.norm();
}

Matrix random_density(Eigen::Index d, Rng &rng, Eigen::Index rank) {
    if (rank <= 0) {
        rank = d;
    }
    Matrix g = gaussian_matrix(d, rank, rng);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace();
}

Matrix random_effect(Eigen::Index d, Rng &rng) {
    Matrix u = haar_unitary(d, rng);
    Vector vals(d);
    for (Eigen::Index k = 0; k < d; k++) {
        vals(k) = rng.uniform();
    }
    return u * vals.asDiagonal() * u.adjoint();
}

Matrix random_unit_hermitian(Eigen::Index d, Rng &rng) {
    Matrix g = gaussian_matrix(d, d, rng);
    Matrix h = (g + g.adjoint()) / 2;
    return h / spectral_norm(h);
}

RealVector random_distribution(Eigen::Index k, Rng &rng) {
    RealVector p(k);
    for (Eigen::Index i = 0; i < k; i++) {
        p(i) = -std::log(1.0 - rng.uniform());
    }
    return p / p.sum();
}

}  // namespace qonline
