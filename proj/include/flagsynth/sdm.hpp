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

#include <vector>

#include "flag_decomp.hpp"

namespace flagsynth {

/// @brief k0 = m0 D m1 and k1 = m0 D^dag m1 with D = diag(e^{-i theta_z / 2}).
struct Demux {
    Matrix m0;
    RVector theta_z;
    Matrix m1;
};

/// @brief Demultiplex a pair of unitaries into a multiplexed RZ between two unitaries.
Demux de_mux(const Matrix &k0, const Matrix &k1);

/// @brief Placement of the CY(q1 -> q0) gates produced by re_de_mux, as matrix factors.
enum class CySide {
    Both,   ///< m01 Y m10 = E (m01' Y' m10') E
    Right,  ///< m01 Y m10 = (m01' Y' m10') E
    Left    ///< m01 Y m10 = E (m01' Y' m10')
};

/// @brief Result of re_de_mux: m01p Y(theta_y) m10p up to the CY gates.
struct ReDemux {
    Matrix m01p;
    RVector theta_y;
    Matrix m10p;
};

/**
 * @brief Rewrite m01 * MuxRY(theta_y) * m10 with fresh outer unitaries.
 *
 * m01 and m10 act on the n-1 control qubits, MuxRY targets the remaining qubit q0 and
 * E = CY(q1 -> q0) with q1 the first control.
 */
ReDemux re_de_mux(const Matrix &m01, const RVector &theta_y, const Matrix &m10, CySide side);

/// @brief Two-qubit unitary with 15 rotations, 3 CNOTs and one global phase.
Circuit two_qubit_unitary(const Matrix &v, const std::vector<int> &qubits);

/// @brief Recursive flag decomposition with symmetrised multiplexers.
FlagFactorization rec_flag_dec(const Matrix &v, const std::vector<int> &qubits);

/// @brief Full unitary synthesis by symmetrised demultiplexing (n >= 2).
Circuit sdm(const Matrix &v, const std::vector<int> &qubits);

/// @brief sdm on qubits 0..n-1.
Circuit sdm(const Matrix &v);

} // namespace flagsynth
