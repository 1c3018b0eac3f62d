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

#include <bit>

#include "flagsynth/flag_decomp.hpp"
#include "flagsynth/multiplexers.hpp"
#include "test_support.hpp"

using namespace flagsynth;
using namespace flagsynth::testing;

namespace {

Matrix hand_kron(const Matrix &a, const Matrix &b)
{
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return m;
}

Matrix hand_rx(double t)
{
    Matrix m(2, 2);
    m << std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2);
    return m;
}

Matrix hand_cnot()
{
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

Matrix template_oracle(const TwoQubitKak &k)
{
    const Matrix id = Matrix::Identity(2, 2), cx = hand_cnot();
    return std::exp(kI * k.alpha) * hand_kron(id, hand_rz(-k.psi)) * cx * hand_kron(k.a, k.b) * cx *
           hand_kron(hand_rx(k.theta), hand_rz(k.phi)) * cx * hand_kron(k.c, k.d);
}

/** @brief diag(delta) times the flag matrix on `width` qubits. */
Matrix flag_matrix(const FlagFactorization &f, int width)
{
    return diag_matrix(f.delta) * matrix_on(f.flag, width);
}

/** @brief Ruler sequence of MuxFlag targets for an n-qubit flag circuit. */
std::vector<int> ruler(int n)
{
    std::vector<int> r;
    for (long long t = 1; t < p2(n); ++t)
        r.push_back(n - 1 - std::countr_zero(static_cast<unsigned long long>(t)));
    return r;
}

double mod_pi(double x)
{
    const double r = std::remainder(x, kPi);
    return std::abs(r);
}

} // namespace

TEST_CASE("one_qubit_flag examples", "[flag][one]")
{
    const FlagFactorization id = one_qubit_flag(Matrix::Identity(2, 2), 0);
    for (const Gate &g : id.flag.gates)
        CHECK(std::abs(g.angles[0]) < 1e-15);
    CHECK((id.delta - CVector::Ones(2)).norm() < 1e-15);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = kI;
    d(1, 1) = -kI;
    const FlagFactorization fd = one_qubit_flag(d, 0);
    CHECK(count_kind(fd.flag, GateKind::RY) == 1);
    for (const Gate &g : fd.flag.gates)
        if (g.kind == GateKind::RY)
            CHECK(std::abs(g.angles[0]) < 1e-12);
    CHECK(frob_dist(flag_matrix(fd, 1), d) < 1e-12);

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix u = haar_unitary(2, rng);
        const FlagFactorization f = one_qubit_flag(u, 0);
        CHECK(count(f.flag).rotations == 2);
        CHECK(frob_dist(flag_matrix(f, 1), u) <= 1e-12);
    }
}

TEST_CASE("asymmetric_two_qubit_decomp of CNOT has trivial interaction angles", "[flag][kak]")
{
    const TwoQubitKak k = asymmetric_two_qubit_decomp(hand_cnot());
    CHECK(mod_pi(k.psi) < 1e-10);
    CHECK(mod_pi(k.theta) < 1e-10);
    CHECK(mod_pi(k.phi) < 1e-10);
    CHECK(frob_dist(template_oracle(k), hand_cnot()) < 1e-12);
}

TEST_CASE("asymmetric_two_qubit_decomp reconstructs local and random inputs", "[flag][kak]")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix loc = hand_kron(haar_unitary(2, rng), haar_unitary(2, rng));
        const TwoQubitKak kl = asymmetric_two_qubit_decomp(loc);
        CHECK(frob_dist(template_oracle(kl), loc) <= 1e-11);
        CHECK(frob_dist(kak_reassemble(kl), loc) <= 1e-11);

        const Matrix v = haar_unitary(4, rng);
        const TwoQubitKak kv = asymmetric_two_qubit_decomp(v);
        CHECK(frob_dist(template_oracle(kv), v) <= 1e-11);
        for (const Matrix *m : {&kv.a, &kv.b, &kv.c, &kv.d})
            CHECK(unitarity_error(*m) < 1e-11);
    }
    const Matrix cz = Matrix(CVector((CVector(4) << 1, 1, 1, -1).finished()).asDiagonal());
    CHECK(frob_dist(template_oracle(asymmetric_two_qubit_decomp(cz)), cz) <= 1e-11);
    CHECK(frob_dist(template_oracle(asymmetric_two_qubit_decomp(Matrix::Identity(4, 4))),
                    Matrix::Identity(4, 4)) <= 1e-11);
}

TEST_CASE("two_qubit_flag counts and reconstruction", "[flag][two]")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix v = haar_unitary(4, rng);
        const FlagFactorization f = two_qubit_flag(v, {0, 1});
        CHECK(count(f.flag).rotations == 12);
        CHECK(count(f.flag).two_qubit_cliffords == 2);
        CHECK(f.delta.size() == 4);
        CHECK(frob_dist(flag_matrix(f, 2), v) <= 1e-10);
    }
    const CVector d = random_phases(4, rng);
    const FlagFactorization fd = two_qubit_flag(diag_matrix(d), {0, 1});
    CHECK(frob_dist(flag_matrix(fd, 2), diag_matrix(d)) <= 1e-10);

    const Matrix v = haar_unitary(4, rng);
    const FlagFactorization fr = two_qubit_flag(v, {1, 0});
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
    CHECK(frob_dist(diag_matrix(fr.delta) * swap * matrix_on(fr.flag, 2) * swap, v) <= 1e-10);
}

TEST_CASE("core_decomp follows the ruler sequence", "[flag][core]")
{
    std::mt19937_64 rng(4);
    for (int n = 2; n <= 5; ++n) {
        const Matrix u = haar_unitary(p2(n), rng);
        const FlagFactorization f = core_decomp({u}, {}, qubit_range(0, n), 1, false);
        std::vector<int> targets;
        for (const Gate &g : f.flag.gates) {
            CHECK(g.kind == GateKind::MuxFlag);
            targets.push_back(g.target());
        }
        CHECK(targets == ruler(n));
        CHECK(frob_dist(flag_matrix(f, n), u) <= 1e-10);
    }
}

TEST_CASE("core_decomp lowered flag counts", "[flag][core]")
{
    std::mt19937_64 rng(5);
    const Matrix u = haar_unitary(8, rng);
    const FlagFactorization f = core_decomp({u}, {}, {0, 1, 2}, 1, true);
    CHECK(count(f.flag).rotations == 56);
    CHECK(count(f.flag).two_qubit_cliffords == 21);
    CHECK(frob_dist(flag_matrix(f, 3), u) <= 1e-10);

    const FlagFactorization fi = core_decomp({Matrix::Identity(8, 8)}, {}, {0, 1, 2}, 2, true);
    CHECK(frob_dist(flag_matrix(fi, 3), Matrix::Identity(8, 8)) <= 1e-12);
}

TEST_CASE("bare n-qubit flag with two-qubit base blocks", "[flag][core]")
{
    std::mt19937_64 rng(6);
    for (int n = 2; n <= 5; ++n) {
        const Matrix u = haar_unitary(p2(n), rng);
        const FlagFactorization f = core_decomp({u}, {}, qubit_range(0, n), 2, true);
        const long long a = p2(2 * n), t = p2(n);
        CHECK(count(f.flag).rotations == a - t);
        CHECK(4 * count(f.flag).two_qubit_cliffords == 2 * a - 7 * t + 4);
        CHECK(frob_dist(flag_matrix(f, n), u) <= 1e-10);
    }
}

TEST_CASE("multiplexed core_decomp reconstructs", "[flag][core]")
{
    std::mt19937_64 rng(7);
    for (int k = 1; k <= 2; ++k) {
        for (int nb : {1, 2}) {
            for (bool kappa : {false, true}) {
                const auto blocks = haar_blocks(static_cast<int>(p2(k)), 8, rng);
                const FlagFactorization f =
                    core_decomp(blocks, qubit_range(0, k), qubit_range(k, k + 3), nb, kappa);
                INFO("k " << k << " nb " << nb << " kappa " << kappa);
                CHECK(frob_dist(flag_matrix(f, k + 3), block_diag(blocks)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("core_decomp argument validation", "[flag][core]")
{
    CHECK_THROWS_AS(core_decomp({Matrix::Identity(4, 4)}, {}, {0, 1}, 3, true), InvalidArgument);
    CHECK_THROWS_AS(core_decomp({Matrix::Identity(2, 2)}, {}, {0}, 2, true), InvalidArgument);
    CHECK_THROWS_AS(core_decomp({Matrix::Identity(4, 4)}, {0}, {1, 2}, 2, true), InvalidArgument);
}

TEST_CASE("flag_synthesize counts", "[flag][synth]")
{
    std::mt19937_64 rng(8);
    const Matrix u3 = haar_unitary(8, rng);
    const Circuit c2 = flag_synthesize(u3, 2, true);
    CHECK(count(c2).rotations == 63);
    CHECK(count(c2).two_qubit_cliffords == 25);
    const Circuit c1 = flag_synthesize(u3, 1, true);
    CHECK(count(c1).rotations == 63);
    CHECK(count(c1).two_qubit_cliffords == 27);

    const Matrix u5 = haar_unitary(32, rng);
    const Circuit c5 = flag_synthesize(u5, 2, true);
    CHECK(frob_dist(to_matrix(c5), u5) <= 1e-9);
    CHECK(count(c5).rotations == 1023);
}

TEST_CASE("flag_synthesize reconstructs for n = 1..5", "[flag][synth]")
{
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 5; ++n) {
        for (int nb : {1, 2}) {
            for (bool lowered : {false, true}) {
                const Matrix u = haar_unitary(p2(n), rng);
                const Circuit c = flag_synthesize(u, nb, lowered);
                INFO("n " << n << " nb " << nb << " lowered " << lowered);
                CHECK(frob_dist(to_matrix(c), u) <= 1e-9);
                CHECK(count(c).rotations == p2(2 * n) - 1);
                CHECK(count(c).global_phases == 1);
                if (lowered)
                    for (const Gate &g : c.gates)
                        CHECK(g.is_elementary());
            }
        }
    }
}
