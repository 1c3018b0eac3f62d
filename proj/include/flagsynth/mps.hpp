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

#include <array>
#include <random>
#include <string>
#include <vector>

#include "sdm.hpp"

namespace flagsynth {

enum class CanonicalForm { None, Left };

/// @brief Site tensor A^sigma, each of shape (left_bond, right_bond).
struct SiteTensor {
    std::array<Matrix, 2> a;

    Eigen::Index left() const { return a[0].rows(); }
    Eigen::Index right() const { return a[0].cols(); }
};

/// @brief Matrix product state; qubit 0 carries the first site.
struct MPS {
    std::vector<SiteTensor> tensors;
    CanonicalForm canonical_form = CanonicalForm::None;

    int length() const { return static_cast<int>(tensors.size()); }
    Eigen::Index max_bond() const;
};

/// @brief Throw InvalidArgument unless bonds match and boundary bonds are 1.
void validate(const MPS &mps);

/// @brief Largest deviation of sum_sigma A^dag A from the identity over all sites.
double left_isometry_error(const MPS &mps);

/// @brief Left-to-right QR sweep; the state is normalised.
MPS left_canonicalize(const MPS &mps);

/// @brief Zero-pad every internal bond to chi.
MPS pad_bond(const MPS &mps, Eigen::Index chi);

/// @brief Extend a matrix with orthonormal columns to a unitary, keeping those columns.
Matrix unitary_complete(const Matrix &iso);

/// @brief Tensor-train contraction, qubit 0 most significant.
CVector mps_statevector(const MPS &mps);

/// @brief Random left-canonical MPS with bonds min(chi, 2^s, 2^(L-s)).
MPS random_mps(int length, Eigen::Index chi, std::mt19937_64 &rng);

/// @brief Circuit preparing an MPS, split by site for auditing.
struct MpsSynthesis {
    Circuit circuit;
    /// Gates of each bulk site in time order (site L-1 first).
    std::vector<Circuit> sites;
    /// Gates preparing the last n sites from the bond register.
    Circuit tail;
    int bond_qubits = 0;
};

/// @brief Smallest power of two >= max(2, max bond).
Eigen::Index default_chi(const MPS &mps);

/// @brief Lowered {Clifford+Rot} preparation circuit.
MpsSynthesis mps_synthesize_clifford_rot(const MPS &mps, Eigen::Index chi = 0);

/// @brief Hierarchical phase-gradient skeleton.
MpsSynthesis mps_synthesize_skeleton(const MPS &mps, Eigen::Index chi = 0);

Circuit mps_to_circuit_clifford_rot(const MPS &mps, Eigen::Index chi = 0);

Circuit mps_skeleton_phase_gradient(const MPS &mps, Eigen::Index chi = 0);

/// @brief |<a|b>| for normalised copies of both vectors.
double state_fidelity(const CVector &a, const CVector &b);

/// @brief Parse the version-1 MPS JSON document.
MPS parse_mps_json(const std::string &text);

/// @brief Serialise as the version-1 MPS JSON document.
std::string emit_mps_json(const MPS &mps);

} // namespace flagsynth
