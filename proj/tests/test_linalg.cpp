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

#include "flagsynth/linalg.hpp"
#include "test_support.hpp"

using namespace flagsynth;
using namespace flagsynth::testing;

namespace {

/** @brief Reassemble a CSD from its parts with hand-built matrices. */
Matrix csd_oracle(const CsdResult &r)
{
    const Eigen::Index h = r.k00.rows();
    Matrix mid = Matrix::Zero(2 * h, 2 * h);
    for (Eigen::Index i = 0; i < h; ++i) {
        const double c = std::cos(r.theta_y(i) / 2), s = std::sin(r.theta_y(i) / 2);
        mid(i, i) = c;
        mid(i, h + i) = -s;
        mid(h + i, i) = s;
        mid(h + i, h + i) = c;
    }
    return block_diag({r.k00, r.k01}) * mid * block_diag({r.k10, r.k11});
}

/** @brief Unitary with prescribed cosine-sine angles, possibly clustered. */
Matrix engineered_csd(const RVector &theta, std::mt19937_64 &rng)
{
    const Eigen::Index h = theta.size();
    CsdResult r{haar_unitary(h, rng), haar_unitary(h, rng), haar_unitary(h, rng),
                haar_unitary(h, rng), theta};
    return csd_oracle(r);
}

} // namespace

TEST_CASE("csd of identity has identity blocks and zero angles", "[linalg][csd]")
{
    const CsdResult r = csd(Matrix::Identity(4, 4));
    CHECK(r.theta_y.norm() < 1e-12);
    for (const Matrix *k : {&r.k00, &r.k01, &r.k10, &r.k11})
        CHECK(phase_free_dist(*k, Matrix::Identity(2, 2)) < 1e-12);
    CHECK(frob_dist(csd_oracle(r), Matrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("csd of a block-diagonal unitary has zero angles", "[linalg][csd]")
{
    std::mt19937_64 rng(11);
    const Matrix u = block_diag({haar_unitary(2, rng), haar_unitary(2, rng)});
    const CsdResult r = csd(u);
    CHECK(r.theta_y.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(frob_dist(csd_oracle(r), u) <= 1e-10);
}

TEST_CASE("csd reassembles Haar-random unitaries", "[linalg][csd]")
{
    std::mt19937_64 rng(12);
    for (int dim : {2, 4, 8, 16}) {
        for (int trial = 0; trial < 50; ++trial) {
            const Matrix u = haar_unitary(dim, rng);
            const CsdResult r = csd(u);
            INFO("dim " << dim << " trial " << trial);
            CHECK(frob_dist(csd_oracle(r), u) <= 1e-10);
            CHECK(frob_dist(csd_reassemble(r), u) <= 1e-10);
            CHECK(unitarity_error(r.k00) < 1e-11);
            CHECK(unitarity_error(r.k11) < 1e-11);
        }
    }
}

TEST_CASE("csd handles clustered and extreme angles", "[linalg][csd]")
{
    std::mt19937_64 rng(13);
    std::vector<RVector> cases;
    RVector t(4);
    t << 0.3, 0.3, 0.3 + 1e-13, 1.1;
    cases.push_back(t);
    t << 0.0, 0.0, kPi, kPi;
    cases.push_back(t);
    t << 1e-9, 2e-9, kPi - 1e-9, 0.7;
    cases.push_back(t);
    t << kPi / 2, kPi / 2, kPi / 2, kPi / 2;
    cases.push_back(t);
    for (const auto &theta : cases) {
        const Matrix u = engineered_csd(theta, rng);
        const CsdResult r = csd(u);
        INFO("theta " << theta.transpose());
        CHECK(frob_dist(csd_oracle(r), u) <= 1e-10);
    }
}

TEST_CASE("csd rejects non-unitary input", "[linalg][csd]")
{
    Matrix m = Matrix::Identity(4, 4);
    m(0, 1) = 0.5;
    CHECK_THROWS_AS(csd(m), NonUnitaryInput);
    CHECK_THROWS_AS(csd(Matrix::Identity(3, 3)), NonUnitaryInput);
}

TEST_CASE("eig_unitary examples", "[linalg][eig]")
{
    const EigResult id = eig_unitary(Matrix::Identity(4, 4));
    CHECK(id.phases.norm() < 1e-12);
    CHECK(frob_dist(id.basis, Matrix::Identity(4, 4)) < 1e-12);

    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    const EigResult ez = eig_unitary(z);
    std::vector<double> ph{ez.phases(0), ez.phases(1)};
    std::sort(ph.begin(), ph.end());
    CHECK(std::abs(ph[0]) < 1e-12);
    CHECK(std::abs(ph[1] - kPi) < 1e-12);
    const RMatrix mag = ez.basis.cwiseAbs();
    const bool perm = (mag - RMatrix::Identity(2, 2)).norm() < 1e-12 ||
                      (mag.rowwise().reverse() - RMatrix::Identity(2, 2)).norm() < 1e-12;
    CHECK(perm);

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix u = haar_unitary(4, rng);
        const EigResult e = eig_unitary(u);
        CVector d(4);
        for (int i = 0; i < 4; ++i)
            d(i) = std::exp(Cplx(0, e.phases(i)));
        CHECK(frob_dist(e.basis * d.asDiagonal() * e.basis.adjoint(), u) <= 1e-10);
        CHECK(unitarity_error(e.basis) < 1e-10);
        for (int i = 0; i < 4; ++i)
            CHECK((e.phases(i) > -kPi && e.phases(i) <= kPi));
    }
}

TEST_CASE("eig_unitary on near-degenerate spectra keeps an orthonormal basis", "[linalg][eig]")
{
    std::mt19937_64 rng(22);
    const Matrix v = haar_unitary(8, rng);
    CVector d(8);
    const double ph[8] = {0.4, 0.4 + 1e-14, 0.4 - 1e-13, 2.0, 2.0, -1.0, kPi, -kPi + 1e-15};
    for (int i = 0; i < 8; ++i)
        d(i) = std::exp(Cplx(0, ph[i]));
    const Matrix u = v * d.asDiagonal() * v.adjoint();
    const EigResult e = eig_unitary(u);
    CVector de(8);
    for (int i = 0; i < 8; ++i)
        de(i) = std::exp(Cplx(0, e.phases(i)));
    CHECK(unitarity_error(e.basis) < 1e-10);
    CHECK(frob_dist(e.basis * de.asDiagonal() * e.basis.adjoint(), u) <= 1e-10);
}

TEST_CASE("eig_symmetric_unitary_real_basis examples", "[linalg][eig]")
{
    auto check = [](const Matrix &s, double tol) {
        const RealEigResult r = eig_symmetric_unitary_real_basis(s);
        CVector d(s.rows());
        for (Eigen::Index i = 0; i < s.rows(); ++i)
            d(i) = std::exp(Cplx(0, r.phases(i)));
        const Matrix o = r.basis.cast<Cplx>();
        CHECK((r.basis.transpose() * r.basis - RMatrix::Identity(s.rows(), s.rows())).norm() <
              1e-10);
        CHECK(frob_dist(o * d.asDiagonal() * o.transpose(), s) <= tol);
    };
    const RealEigResult id = eig_symmetric_unitary_real_basis(Matrix::Identity(4, 4));
    CHECK(id.phases.norm() < 1e-12);
    CHECK((id.basis - RMatrix::Identity(4, 4)).norm() < 1e-12);

    CVector dd(4);
    dd << kI, kI, -kI, -kI;
    check(dd.asDiagonal(), 1e-9);

    Matrix magic(4, 4);
    const double r2 = 1 / std::sqrt(2.0);
    magic << 1, kI, 0, 0, 0, 0, kI, 1, 0, 0, kI, -1, 1, -kI, 0, 0;
    magic *= r2;
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix u = haar_unitary(4, rng);
        u /= std::pow(u.determinant(), 0.25);
        const Matrix m = magic.adjoint() * u * magic;
        check(m.transpose() * m, 1e-9);
    }
}

TEST_CASE("eig_symmetric_unitary_real_basis rejects non-symmetric input", "[linalg][eig]")
{
    std::mt19937_64 rng(24);
    CHECK_THROWS_AS(eig_symmetric_unitary_real_basis(haar_unitary(4, rng)), NotSymmetric);
}

TEST_CASE("euler_zyz examples", "[linalg][euler]")
{
    const EulerAngles id = euler_zyz(Matrix::Identity(2, 2));
    CHECK(std::abs(id.theta_z) < 1e-12);
    CHECK(std::abs(id.theta_y) < 1e-12);
    CHECK(std::abs(id.omega) < 1e-12);
    CHECK(std::abs(id.phi) < 1e-12);

    const EulerAngles y = euler_zyz(hand_ry(kPi / 2));
    CHECK(std::abs(y.theta_z) < 1e-12);
    CHECK(std::abs(y.theta_y - kPi / 2) < 1e-12);
    CHECK(std::abs(y.omega) < 1e-12);
    CHECK(std::abs(y.phi) < 1e-12);
}

TEST_CASE("euler_zyz round-trips random and gimbal-lock inputs", "[linalg][euler]")
{
    auto oracle = [](const EulerAngles &e) {
        Matrix delta = Matrix::Zero(2, 2);
        delta(0, 0) = std::exp(Cplx(0, -(e.phi + e.omega / 2)));
        delta(1, 1) = std::exp(Cplx(0, -(e.phi - e.omega / 2)));
        return Matrix(delta * hand_ry(e.theta_y) * hand_rz(e.theta_z));
    };
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    std::vector<Matrix> inputs;
    for (int i = 0; i < 200; ++i)
        inputs.push_back(haar_unitary(2, rng));
    for (int i = 0; i < 20; ++i) {
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = std::exp(Cplx(0, ang(rng)));
        d(1, 1) = std::exp(Cplx(0, ang(rng)));
        inputs.push_back(d);
        Matrix a = Matrix::Zero(2, 2);
        a(0, 1) = std::exp(Cplx(0, ang(rng)));
        a(1, 0) = std::exp(Cplx(0, ang(rng)));
        inputs.push_back(a);
        inputs.push_back(d * hand_ry(1e-12));
        inputs.push_back(d * hand_ry(kPi - 1e-12));
    }
    for (const auto &u : inputs) {
        const EulerAngles e = euler_zyz(u);
        CHECK(frob_dist(oracle(e), u) <= 1e-12);
        CHECK(frob_dist(euler_matrix(e), u) <= 1e-12);
    }
}

TEST_CASE("haar_unitary is deterministic and unitary", "[linalg]")
{
    std::mt19937_64 a(5), b(5);
    const Matrix u = haar_unitary(16, a);
    CHECK(u == haar_unitary(16, b));
    CHECK(unitarity_error(u) < 1e-12);
}
