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

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include "flagsynth/multiplexers.hpp"
#include "test_support.hpp"

using namespace flagsynth;
using namespace flagsynth::testing;

namespace {

RVector random_angles(Eigen::Index n, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(-kPi, kPi);
    RVector a(n);
    for (Eigen::Index i = 0; i < n; ++i)
        a(i) = u(rng);
    return a;
}

Matrix axis_rotation(Axis axis, double t)
{
    Matrix p(2, 2);
    switch (axis) {
    case Axis::X:
        p << 0, 1, 1, 0;
        break;
    case Axis::Y:
        p << 0, -kI, kI, 0;
        break;
    default:
        p << 1, 0, 0, -1;
    }
    return std::cos(t / 2) * Matrix::Identity(2, 2) - kI * std::sin(t / 2) * p;
}

/** @brief Entangler from qubit 0 to qubit k on k+1 qubits, built by hand. */
Matrix entangler_matrix(Entangler e, int k)
{
    Matrix p(2, 2);
    switch (e) {
    case Entangler::CY:
        p << 0, -kI, kI, 0;
        break;
    case Entangler::CZ:
        p << 1, 0, 0, -1;
        break;
    default:
        p << 0, 1, 1, 0;
    }
    const Eigen::Index half = p2(k);
    const Matrix id = Matrix::Identity(half, half);
    Matrix lower = Matrix::Zero(half, half);
    for (Eigen::Index i = 0; i < half / 2; ++i)
        lower.block(2 * i, 2 * i, 2, 2) = p;
    return block_diag({id, lower});
}

Matrix mux_oracle(Axis axis, const RVector &angles)
{
    std::vector<Matrix> blocks;
    for (Eigen::Index i = 0; i < angles.size(); ++i)
        blocks.push_back(axis_rotation(axis, angles(i)));
    return block_diag(blocks);
}

} // namespace

TEST_CASE("mottonen counts for k=3, axis Z", "[multiplexers][mottonen]")
{
    std::mt19937_64 rng(1);
    const Circuit c = mottonen(random_angles(8, rng), Axis::Z, {0, 1, 2}, 3);
    CHECK(count(c).rotations == 8);
    CHECK(count_kind(c, GateKind::CNOT) == 8);
}

TEST_CASE("mottonen angle transform is linear", "[multiplexers][mottonen]")
{
    CHECK(mottonen_angles(RVector::Zero(8), Sym::None).norm() == 0.0);
    RVector ab(2);
    ab << 0.9, -0.4;
    const RVector hat = mottonen_angles(ab, Sym::None);
    CHECK(std::abs(hat(0) - 0.25) < 1e-15);
    CHECK(std::abs(hat(1) - 0.65) < 1e-15);
    const Circuit c = mottonen(ab, Axis::Z, {0}, 1);
    CHECK(frob_dist(to_matrix(c), block_diag({hand_rz(0.9), hand_rz(-0.4)})) <= 1e-12);
}

TEST_CASE("mottonen matches the multiplexer for every compatible configuration",
          "[multiplexers][mottonen]")
{
    std::mt19937_64 rng(2);
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        for (Entangler ent : {Entangler::CNOT, Entangler::CY, Entangler::CZ}) {
            const bool bad = (axis == Axis::X && ent == Entangler::CNOT) ||
                             (axis == Axis::Y && ent == Entangler::CY) ||
                             (axis == Axis::Z && ent == Entangler::CZ);
            for (int k = 0; k <= 5; ++k) {
                const RVector a = random_angles(p2(k), rng);
                const auto ctrl = qubit_range(0, k);
                if (bad) {
                    CHECK_THROWS_AS(mottonen(a, axis, ctrl, k, Sym::None, ent),
                                    IncompatibleEntangler);
                    continue;
                }
                const Matrix mux = mux_oracle(axis, a);
                for (Sym sym : {Sym::None, Sym::Left, Sym::Right}) {
                    const Circuit c = mottonen(a, axis, ctrl, k, sym, ent);
                    Matrix expect = mux;
                    if (k > 0 && sym == Sym::Right)
                        expect = entangler_matrix(ent, k) * mux;
                    if (k > 0 && sym == Sym::Left)
                        expect = mux * entangler_matrix(ent, k);
                    INFO("k " << k << " sym " << static_cast<int>(sym));
                    CHECK(frob_dist(matrix_on(c, k + 1), expect) <= 1e-11);
                    const long long ents = count(c).two_qubit_cliffords;
                    if (k == 0)
                        CHECK(ents == 0);
                    else
                        CHECK(ents == (sym == Sym::None ? p2(k) : p2(k) - 1));
                    CHECK(count(c).rotations == p2(k));
                }
            }
        }
    }
}

TEST_CASE("mottonen on permuted controls agrees with the multiplexer gate",
          "[multiplexers][mottonen]")
{
    std::mt19937_64 rng(3);
    const RVector a = random_angles(8, rng);
    Circuit ref(4);
    ref.add(Gate::mux_rot(Axis::Y, a, {3, 0, 2}, 1));
    const Circuit c = mottonen(a, Axis::Y, {3, 0, 2}, 1);
    CHECK(frob_dist(matrix_on(c, 4), to_matrix(ref)) <= 1e-11);
}

TEST_CASE("balance_diagonal examples", "[multiplexers][diagonal]")
{
    auto [t0, d0] = balance_diagonal(CVector::Ones(3), CVector::Ones(3));
    CHECK(t0.norm() < 1e-15);
    CHECK((d0 - CVector::Ones(3)).norm() < 1e-15);

    CVector a = CVector::Ones(2), b = CVector::Constant(2, kI);
    auto [t1, d1] = balance_diagonal(a, b);
    CHECK((t1 - RVector::Constant(2, kPi / 2)).norm() < 1e-15);
    CHECK((d1 - CVector::Constant(2, std::exp(kI * kPi / 4.0))).norm() < 1e-15);

    CVector w0(1), w1(1);
    w0 << std::exp(kI * 3.0);
    w1 << std::exp(-kI * 3.0);
    auto [t2, d2] = balance_diagonal(w0, w1);
    CHECK(std::abs(d2(0) * std::exp(-kI * t2(0) / 2.0) - w0(0)) <= 1e-14);
    CHECK(std::abs(d2(0) * std::exp(kI * t2(0) / 2.0) - w1(0)) <= 1e-14);
}

TEST_CASE("balance_diagonal reassembles random phases", "[multiplexers][diagonal]")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10000; ++trial) {
        const CVector a = random_phases(1, rng), b = random_phases(1, rng);
        auto [t, d] = balance_diagonal(a, b);
        REQUIRE(std::abs(d(0) * std::exp(-kI * t(0) / 2.0) - a(0)) <= 1e-14);
        REQUIRE(std::abs(d(0) * std::exp(kI * t(0) / 2.0) - b(0)) <= 1e-14);
    }
}

TEST_CASE("decompose_diagonal examples", "[multiplexers][diagonal]")
{
    std::mt19937_64 rng(5);
    const CVector d3 = random_phases(8, rng);
    const Circuit c3 = decompose_diagonal(d3, {0, 1, 2});
    CHECK(count(c3).rotations == 7);
    CHECK(count(c3).two_qubit_cliffords == 6);
    CHECK(frob_dist(to_matrix(c3), diag_matrix(d3)) < 1e-12);

    const Circuit one = decompose_diagonal(CVector::Ones(8), {0, 1, 2});
    for (const Gate &g : one.gates)
        for (double a : g.angles)
            CHECK(std::abs(a) < 1e-15);
    CHECK(count_kind(one, GateKind::GlobalPhase) == 1);

    CVector d2(4);
    d2 << 1, kI, -1, -kI;
    CHECK(frob_dist(to_matrix(decompose_diagonal(d2, {0, 1})), diag_matrix(d2)) <= 1e-12);
}

TEST_CASE("demux_u2_node examples and eigenvalue property", "[multiplexers][demux]")
{
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::exp(kI * kPi / 4.0);
    d(1, 1) = std::exp(-kI * kPi / 4.0);
    auto check = [&](const Matrix &k0, const Matrix &k1, double tol) {
        const DemuxU2 r = demux_u2_node(k0, k1);
        Matrix rr = Matrix::Zero(2, 2);
        rr(0, 0) = std::exp(kI * r.rho0);
        rr(1, 1) = std::exp(kI * r.rho1);
        const double e0 = frob_dist(rr.adjoint() * r.l0 * d * r.l1, k0);
        const double e1 = frob_dist(rr * r.l0 * d.adjoint() * r.l1, k1);
        Eigen::ComplexEigenSolver<Matrix> es(rr * k0 * k1.adjoint() * rr);
        CVector ev = es.eigenvalues();
        if (ev(0).imag() < ev(1).imag())
            std::swap(ev(0), ev(1));
        const double eig = std::max(std::abs(ev(0) - kI), std::abs(ev(1) + kI));
        return std::max({e0, e1, eig}) <= tol;
    };
    const Matrix id = Matrix::Identity(2, 2);
    Matrix z = id;
    z(1, 1) = -1;
    CHECK(check(id, id, 1e-14));
    CHECK(check(z, id, 1e-11));
    CHECK(check(id, z, 1e-11));
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 2000; ++trial)
        REQUIRE(check(haar_unitary(2, rng), haar_unitary(2, rng), 1e-11));
    CHECK_THROWS_AS(demux_u2_node(2.0 * id, id), NonUnitaryInput);
}

TEST_CASE("dec_mux_1QF examples", "[multiplexers][decmux]")
{
    std::mt19937_64 rng(7);
    const auto blocks2 = haar_blocks(4, 2, rng);
    const MuxFlagDecomp d2 = dec_mux_1QF(blocks2, {0, 1}, 2);
    CHECK(count(d2.flags).rotations == 8);
    CHECK(count(d2.flags).two_qubit_cliffords == 3);
    CHECK(d2.delta.size() == 8);
    CHECK(frob_dist(diag_matrix(d2.delta) * matrix_on(d2.flags, 3), block_diag(blocks2)) <= 1e-10);

    const std::vector<Matrix> ids(8, Matrix::Identity(2, 2));
    const MuxFlagDecomp di = dec_mux_1QF(ids, {0, 1, 2}, 3);
    CHECK(frob_dist(diag_matrix(di.delta) * matrix_on(di.flags, 4), Matrix::Identity(16, 16)) <=
          1e-12);

    const auto blocks3 = haar_blocks(8, 2, rng);
    for (Entangler e : {Entangler::CZ, Entangler::CNOT}) {
        const MuxFlagDecomp d3 = dec_mux_1QF(blocks3, {0, 1, 2}, 3, e);
        CHECK(frob_dist(diag_matrix(d3.delta) * matrix_on(d3.flags, 4), block_diag(blocks3)) <=
              1e-10);
    }
    CHECK_THROWS_AS(dec_mux_1QF(blocks2, {0, 1}, 2, Entangler::CY), IncompatibleEntangler);
}

TEST_CASE("dec_mux_1QF counts for k = 0..5", "[multiplexers][decmux]")
{
    std::mt19937_64 rng(8);
    for (int k = 0; k <= 5; ++k) {
        const auto blocks = haar_blocks(static_cast<int>(p2(k)), 2, rng);
        for (Entangler e : {Entangler::CZ, Entangler::CNOT}) {
            const MuxFlagDecomp d = dec_mux_1QF(blocks, qubit_range(0, k), k, e);
            INFO("k " << k);
            CHECK(count(d.flags).rotations == p2(k + 1));
            CHECK(count(d.flags).two_qubit_cliffords == p2(k) - 1);
            CHECK(frob_dist(diag_matrix(d.delta) * matrix_on(d.flags, k + 1), block_diag(blocks)) <=
                  1e-10);
        }
    }
}
