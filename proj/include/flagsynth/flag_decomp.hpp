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

#include "multiplexers.hpp"

namespace flagsynth {

/// @brief V = diag(delta) * matrix(flag).
struct FlagFactorization {
    Circuit flag;
    CVector delta;
};

/**
 * @brief Parameters of the asymmetric two-qubit template.
 *
 * v = e^{i alpha} RZ_1(-psi) CNOT (a (x) b) CNOT (RX_0(theta) (x) RZ_1(phi)) CNOT (c (x) d),
 * with CNOT controlled on the first qubit.
 */
struct TwoQubitKak {
    Matrix a, b, c, d;
    double alpha = 0.0;
    double psi = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// @brief Rebuild the 4x4 matrix described by a TwoQubitKak.
Matrix kak_reassemble(const TwoQubitKak &k);

/// @brief Single-qubit flag [RZ, RY] with its diagonal.
FlagFactorization one_qubit_flag(const Matrix &u, int qubit);

/// @brief Asymmetric two-qubit decomposition via the magic basis.
TwoQubitKak asymmetric_two_qubit_decomp(const Matrix &v);

/// @brief Two-qubit flag: six single-qubit flags and two CZ gates.
FlagFactorization two_qubit_flag(const Matrix &v, const std::vector<int> &qubits);

/**
 * @brief Recursive flag decomposition of a multiplexed operator.
 *
 * blocks[j] acts on target_qubits for control value j of mux_qubits. The returned delta
 * is indexed over (mux_qubits..., target_qubits...). With kappa the multiplexed single-qubit
 * flags are lowered and their diagonals merged into later blocks.
 */
FlagFactorization core_decomp(const std::vector<Matrix> &blocks, const std::vector<int> &mux_qubits,
                              const std::vector<int> &target_qubits, int nb, bool kappa);

/// @brief Full synthesis: flag circuit followed by the diagonal.
Circuit flag_synthesize(const Matrix &u, int nb, bool lowered);

} // namespace flagsynth
