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

#include <utility>
#include <vector>

#include "circuit.hpp"

namespace flagsynth {

/// @brief Placement of the omitted entangler of a symmetrized multiplexer.
enum class Sym { None, Left, Right };

/// @brief Two-qubit Clifford used as entangler.
enum class Entangler { CNOT, CY, CZ };

/// @brief Gate for entangler `e` with control c and target t.
Gate entangler_gate(Entangler e, int c, int t);

/// @brief Decomposed rotation angles 2^-k M^T theta of the Gray-code construction.
RVector mottonen_angles(const RVector &angles, Sym sym);

/**
 * @brief Multiplexed rotation as alternating rotations and entanglers.
 *
 * With sym = None the circuit equals the multiplexer. With sym = Right the final
 * entangler E on controls[0] is dropped and the circuit equals E * Mux, so E is owed to
 * the gates executed afterwards. With sym = Left the circuit equals Mux * E, so E is owed
 * to the gates executed before.
 */
Circuit mottonen(const RVector &angles, Axis axis, const std::vector<int> &controls, int target,
                 Sym sym = Sym::None, Entangler ent = Entangler::CNOT);

/// @brief Split a diagonal pair into a multiplexed R_Z and a common diagonal.
std::pair<RVector, CVector> balance_diagonal(const CVector &delta10, const CVector &delta11);

/// @brief Diagonal unitary as multiplexed R_Z gates and one global phase (hierarchical).
Circuit decompose_diagonal(const CVector &delta, const std::vector<int> &qubits);

/// @brief Result of de-multiplexing a pair of 2x2 unitaries.
struct DemuxU2 {
    double rho0 = 0.0;
    double rho1 = 0.0;
    Matrix l0;
    Matrix l1;
};

/**
 * @brief Factor k0 = r^dag l0 d l1 and k1 = r l0 d^dag l1.
 *
 * r = diag(e^{i rho0}, e^{i rho1}) and d = diag(e^{i pi/4}, e^{-i pi/4}).
 */
DemuxU2 demux_u2_node(const Matrix &k0, const Matrix &k1);

/// @brief Flags plus trailing diagonal realizing a multiplexed U(2).
struct MuxFlagDecomp {
    Circuit flags;
    CVector delta;
};

/**
 * @brief Multiplexed U(2) as 2^k single-qubit flags, 2^k - 1 entanglers and a diagonal.
 *
 * diag(delta) * matrix(flags) equals the multiplexer; delta is indexed over
 * (controls..., target).
 */
MuxFlagDecomp dec_mux_1QF(const std::vector<Matrix> &blocks, const std::vector<int> &controls,
                          int target, Entangler ent = Entangler::CZ);

} // namespace flagsynth
