// Copyright 2025 Xanadu Quantum Technologies Inc.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "config.hpp"

namespace flagsynth {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Cplx kI{0.0, 1.0};

/// @brief Frobenius norm of a - b.
double frob_dist(const Matrix &a, const Matrix &b);

/// @brief ||u^dagger u - I||_F.
double unitarity_error(const Matrix &u);

/// @brief True when u is square, power-of-two sized and unitary within tol.
bool is_unitary(const Matrix &u, double tol = kTol.unitarity);

/// @brief Throws NonUnitaryInput unless is_unitary(u, tol).
void require_unitary(const Matrix &u, const char *where, double tol = kTol.unitarity);

/// @brief log2 of a power-of-two dimension, throws InvalidArgument otherwise.
int log2_dim(Eigen::Index dim);

/// @brief Single-qubit rotation exp(-i theta Z / 2).
Matrix rz(double theta);
/// @brief Single-qubit rotation exp(-i theta Y / 2).
Matrix ry(double theta);
/// @brief Single-qubit rotation exp(-i theta X / 2).
Matrix rx(double theta);

/// @brief Kronecker product a (x) b with a on the more significant bits.
Matrix kron(const Matrix &a, const Matrix &b);

/// @brief Block diagonal a (+) b.
Matrix direct_sum(const Matrix &a, const Matrix &b);

/// @brief Haar-random unitary via QR of a Gaussian matrix with phase-normalized R.
Matrix haar_unitary(Eigen::Index dim, std::mt19937_64 &rng);

/// @brief Closest unitary in Frobenius norm (polar factor).
Matrix closest_unitary(const Matrix &m);

/**
 * @brief Cosine-sine decomposition with an equal partition.
 *
 * u = (k00 (+) k01) * A(theta_y) * (k10 (+) k11) where A is the block matrix
 * [[C, -S], [S, C]], C = cos(theta_y / 2), S = sin(theta_y / 2).
 */
struct CsdResult {
    Matrix k00, k01, k10, k11;
    RVector theta_y;
};

/// @brief Multiplexed R_Y block matrix [[C, -S], [S, C]] for the given angles.
Matrix csd_middle(const RVector &theta_y);

/// @brief Reassemble the matrix represented by a CsdResult.
Matrix csd_reassemble(const CsdResult &r);

/// @brief Cosine-sine decomposition of a 2^n x 2^n unitary, n >= 1.
CsdResult csd(const Matrix &u);

/// @brief Eigendecomposition x = basis * diag(exp(i phases)) * basis^dagger.
struct EigResult {
    Matrix basis;
    RVector phases;
};

/// @brief Eigendecomposition of a unitary matrix, phases in (-pi, pi].
EigResult eig_unitary(const Matrix &x);

/// @brief Real orthogonal eigenbasis of a symmetric unitary matrix.
struct RealEigResult {
    RMatrix basis;
    RVector phases;
};

/// @brief s = basis * diag(exp(i phases)) * basis^T with real orthogonal basis.
RealEigResult eig_symmetric_unitary_real_basis(const Matrix &s);

/// @brief Angles of u = Delta(omega, phi) RY(theta_y) RZ(theta_z).
struct EulerAngles {
    double theta_z = 0.0;
    double theta_y = 0.0;
    double omega = 0.0;
    double phi = 0.0;
};

/// @brief ZYZ-type Euler angles of a 2x2 unitary with the diagonal on the left.
EulerAngles euler_zyz(const Matrix &u);

/// @brief Rebuild Delta(omega, phi) RY(theta_y) RZ(theta_z).
Matrix euler_matrix(const EulerAngles &e);

/// @brief Principal argument in (-pi, pi]; values within tol of -1 map to +pi.
double principal_arg(Cplx z);

} // namespace flagsynth
