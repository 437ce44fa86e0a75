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

#ifndef QONLINE_RANDOM_HPP
#define QONLINE_RANDOM_HPP

#include "qonline/linalg.hpp"
#include "qonline/rng.hpp"

namespace qonline {

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng);

/// Haar-random unitary from the QR decomposition of a Gaussian matrix with
/// the phases of R's diagonal absorbed.
Matrix haar_unitary(Eigen::Index d, Rng &rng);

/// Haar-random isometry from C^d_in into C^d_out (d_out >= d_in).
Matrix haar_isometry(Eigen::Index d_in, Eigen::Index d_out, Rng &rng);

Vector random_pure_state(Eigen::Index d, Rng &rng);

/// Ginibre-distributed density matrix of the given rank (full rank if 0).
Matrix random_density(Eigen::Index d, Rng &rng, Eigen::Index rank = 0);

/// Random effect 0 <= M <= I with Haar eigenbasis and uniform eigenvalues.
Matrix random_effect(Eigen::Index d, Rng &rng);

/// Random Hermitian matrix with spectral norm exactly one.
Matrix random_unit_hermitian(Eigen::Index d, Rng &rng);

/// Uniform point of the probability simplex.
RealVector random_distribution(Eigen::Index k, Rng &rng);

}  // namespace qonline

#endif  // QONLINE_RANDOM_HPP
