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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"

namespace flagsynth {

/// @brief Exact rational number with a positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n) {}
    Rational(long long n, long long d);

    bool is_integer() const { return den == 1; }
    /// @brief Integer value; throws std::logic_error when not integral.
    long long to_integer() const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend Rational operator/(Rational a, Rational b);
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Rational a, Rational b);
};

/// @brief Unitary synthesis methods listed in the comparison table.
enum class Method { QR, CSD99, QSD15, QSD25, QSD24, CSD04M, CSD04B, FlagDecomp, SDM, BWC, Optimum };

std::string method_name(Method m);
const std::vector<Method> &all_methods();

struct MethodCounts {
    long long rotations = 0;
    long long cnots = 0;
};

/// @brief Closed-form rotation and CNOT counts; UnsupportedRange outside a row's validity.
MethodCounts table1_counts(Method m, int n);

/// @brief Subroutines of the elementary gate-count table.
enum class Subroutine {
    OneQFlag,
    TwoQFlag,
    MuxRot,
    SymMuxRot,
    MuxOneQFlag,
    MuxTwoQFlag,
    NQFlagBergholm,
    NQFlagMinimal,
    MuxNQFlag,
    Diagonal,
    NQUnitary,
    MpsPrep
};

std::string subroutine_name(Subroutine s);
const std::vector<Subroutine> &all_subroutines();

struct SubroutineCounts {
    long long rotations = 0;
    long long cliffords = 0;
    /// 1 when an extra diagonal is required, 0 otherwise.
    int delta = 0;
};

/**
 * @brief Closed-form counts of one subroutine row.
 *
 * n is the qubit count and k the number of multiplexing qubits; for MpsPrep k is the
 * number of bulk sites L. Throws UnsupportedRange outside the row's validity.
 */
SubroutineCounts table2_counts(Subroutine s, int n, int k);

/// @brief Minimal flag CNOT cost from the inductive derivation.
Rational flag_cnots_appendix(int n);

/// @brief Minimal flag CNOT cost as stated in the main text.
Rational flag_cnots_main_text(int n);

/// @brief Comparison of the counted rec_flag_dec CNOTs with both published formulas.
struct DiscrepancyEntry {
    int n = 0;
    long long counted = 0;
    Rational appendix;
    Rational main_text;
    bool matches_appendix() const { return Rational(counted) == appendix; }
    bool matches_main_text() const { return Rational(counted) == main_text; }
};

DiscrepancyEntry flag_cost_discrepancy(int n, std::uint64_t seed = 1);

struct AuditEntry {
    std::string category;
    long long expected = 0;
    long long actual = 0;
    bool match() const { return expected == actual; }
};

struct AuditReport {
    std::string formula_id;
    std::vector<AuditEntry> entries;
    bool pass() const;
    std::string str() const;
};

/// @brief Compare rotation and two-qubit Clifford counts of a lowered circuit.
AuditReport audit(const Circuit &c, long long rotations, long long cliffords,
                  const std::string &formula_id);

/// @brief Parameters of the phase-gradient Toffoli estimates.
struct CostParams {
    int n = 2;
    long long b = 1;
    long long lambda = 1;
    long long lambda_prime = 1;
    long long aux_qubits = 0;
};

/// @brief Throws InvalidArgument unless lambda, lambda_prime are powers of two and b >= 1.
void validate(const CostParams &p);

/// @brief SelectSwap QROM over `entries` items of `bits` bits with `lambda` rows.
Rational toffoli_qrom(Rational entries, long long lambda, long long bits);
/// @brief Adder with a classical input.
Rational toffoli_adder(long long b);
/// @brief Sign block of a diagonal over 2^n entries.
Rational toffoli_sign_block(int n, long long lambda_prime);
/// @brief Incrementers and decrementers of the multiplexer baseline.
Rational toffoli_incrementers(int n);

/// @brief Multiplexed single-qubit flag: 2^n/(2 lambda) + 2 lambda b - 5.
Rational toffoli_mux_flag(const CostParams &p);
/// @brief Diagonal: 2^n/(2 lambda) + 2 lambda b + 2^n/lambda' + lambda' - 5.
Rational toffoli_diagonal(const CostParams &p);
/// @brief Controlled single-qubit rotation over 2^n angles.
Rational toffoli_controlled_rotation(const CostParams &p);

struct ReportLine {
    std::string id;
    Rational value;
};

struct ResourceReport {
    CostParams params;
    std::vector<ReportLine> blocks;
    Rational ours;
    Rational baseline;
    Rational savings;
    std::vector<std::string> warnings;

    std::string text() const;
    std::string json() const;
};

/// @brief Flag-decomposition totals against the multiplexer baseline (n >= 2).
ResourceReport toffoli_totals(const CostParams &p);

/// @brief Per-isometry MPS costs against the phase-multiplexer baseline (n >= 1).
ResourceReport mps_toffoli(const CostParams &p);

/// @brief Nearest powers of two to min(ceil(sqrt(2^m / b)), floor(aux / b)), ties down.
std::pair<long long, long long> choose_lambda(int m, long long b, long long aux_qubits);

} // namespace flagsynth
