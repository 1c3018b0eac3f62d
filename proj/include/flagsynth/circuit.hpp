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

#include <string>
#include <vector>

#include "linalg.hpp"

namespace flagsynth {

/// @brief Rotation axis of a (multiplexed) Pauli rotation.
enum class Axis { X, Y, Z };

/// @brief Gate variants; hierarchical kinds follow GlobalPhase.
enum class GateKind {
    RZ,
    RY,
    RX,
    H,
    S,
    Sdg,
    X,
    Z,
    CNOT,
    CZ,
    CY,
    GlobalPhase,
    MuxRX,
    MuxRY,
    MuxRZ,
    MuxFlag,
    Diagonal,
    MuxU2,
};

/**
 * @brief A single gate.
 *
 * `qubits` lists controls first and the target last. For Diagonal the list holds the
 * qubits the phase vector is indexed over, first qubit most significant. MuxFlag stores
 * the R_Z angles followed by the R_Y angles in `angles`.
 */
struct Gate {
    GateKind kind = GateKind::GlobalPhase;
    std::vector<int> qubits;
    std::vector<double> angles;
    std::vector<Cplx> phases;
    std::vector<Matrix> blocks;

    static Gate rz(double theta, int q);
    static Gate ry(double theta, int q);
    static Gate rx(double theta, int q);
    static Gate rot(Axis axis, double theta, int q);
    static Gate h(int q);
    static Gate s(int q);
    static Gate sdg(int q);
    static Gate x(int q);
    static Gate z(int q);
    static Gate cnot(int c, int t);
    static Gate cz(int c, int t);
    static Gate cy(int c, int t);
    static Gate global_phase(double alpha);
    static Gate mux_rot(Axis axis, const RVector &angles, const std::vector<int> &controls,
                        int target);
    static Gate mux_flag(const RVector &theta_z, const RVector &theta_y,
                         const std::vector<int> &controls, int target);
    static Gate diagonal(const CVector &phases, const std::vector<int> &qubits);
    static Gate mux_u2(const std::vector<Matrix> &blocks, const std::vector<int> &controls,
                       int target);

    /// @brief True for the elementary gate set accepted by emit_qasm.
    bool is_elementary() const;
    /// @brief True for RZ, RY and RX.
    bool is_rotation() const;
    /// @brief True for CNOT, CZ and CY.
    bool is_two_qubit_clifford() const;
    /// @brief Number of control qubits for multiplexed kinds.
    int num_controls() const;
    /// @brief Target qubit (last entry of `qubits`).
    int target() const { return qubits.back(); }
    /// @brief Controls (all qubits but the last).
    std::vector<int> controls() const;

    bool operator==(const Gate &o) const;
};

/// @brief Ordered gate list; the circuit matrix is G_m ... G_1.
struct Circuit {
    int width = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int w) : width(w) {}

    /// @brief Append a gate, widening the circuit if needed.
    void add(const Gate &g);
    /// @brief Append all gates of another circuit.
    void extend(const Circuit &c);
    bool operator==(const Circuit &o) const;
};

/// @brief Categorised gate counts.
struct ResourceCount {
    long long rotations = 0;
    long long two_qubit_cliffords = 0;
    long long other_cliffords = 0;
    long long global_phases = 0;
    long long parameters = 0;

    bool operator==(const ResourceCount &o) const = default;
};

/// @brief Kind name used in the JSON schema.
std::string kind_name(GateKind k);

/// @brief Apply one gate to the rows of `m` (m <- G m) for a register of `width` qubits.
void apply_gate(Matrix &m, const Gate &g, int width);

/// @brief Dense matrix of a circuit; qubit 0 is the most significant bit.
Matrix to_matrix(const Circuit &c);

/// @brief Apply a circuit to a state vector of dimension 2^width.
CVector simulate(const Circuit &c, const CVector &psi);

/// @brief Counts after lowering a copy of the circuit.
ResourceCount count(const Circuit &c);

/// @brief Counts of elementary gates only; hierarchical gates are ignored.
ResourceCount count_elementary(const Circuit &c);

/// @brief Number of gates of the given kind, without lowering.
long long count_kind(const Circuit &c, GateKind k);

/// @brief Expand every hierarchical gate into elementary gates.
Circuit lower(const Circuit &c);

/// @brief Serialize as the version-1 circuit JSON document.
std::string emit_json(const Circuit &c);

/// @brief Parse a version-1 circuit JSON document.
Circuit parse_json(const std::string &text);

/// @brief OpenQASM 2 text of an elementary circuit.
std::string emit_qasm(const Circuit &c);

} // namespace flagsynth
