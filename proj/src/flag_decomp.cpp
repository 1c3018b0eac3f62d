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

#include "flagsynth/flag_decomp.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace flagsynth {

namespace {

CVector flag_delta(const EulerAngles &e)
{
    CVector d(2);
    d(0) = std::exp(-kI * (e.phi + e.omega / 2.0));
    d(1) = std::exp(-kI * (e.phi - e.omega / 2.0));
    return d;
}

Matrix magic_basis()
{
    const double r = 1.0 / std::sqrt(2.0);
    Matrix m(4, 4);
    m << r, 0, 0, kI * r,
         0, kI * r, r, 0,
         0, kI * r, -r, 0,
         r, 0, 0, -kI * r;
    return m;
}

Matrix cnot01()
{
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = 1.0;
    m(2, 3) = m(3, 2) = 1.0;
    return m;
}

Matrix zz_exp(double coeff)
{
    // exp(i * coeff * ZZ)
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = std::exp(kI * coeff);
    m(1, 1) = m(2, 2) = std::exp(-kI * coeff);
    return m;
}

// Split a 4x4 product a (x) b into its factors with det(b) = 1.
std::pair<Matrix, Matrix> split_kron(const Matrix &t)
{
    int bi = 0, bk = 0;
    double best = -1.0;
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            const double n = t.block(2 * i, 2 * k, 2, 2).norm();
            if (n > best) {
                best = n;
                bi = i;
                bk = k;
            }
        }
    }
    Matrix b = t.block(2 * bi, 2 * bk, 2, 2);
    b /= std::sqrt(b.determinant());
    Matrix a(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            a(i, k) = 0.5 * (b.adjoint() * t.block(2 * i, 2 * k, 2, 2)).trace();
        }
    }
    return {a, b};
}

Matrix template_core(double theta, double phi)
{
    const Matrix c = cnot01();
    return c * kron(rx(theta), rz(phi)) * c;
}

// X_B = O S Q with O real orthogonal diagonalising X X^T and Q real orthogonal.
RMatrix real_right_factor(const Matrix &xb, const RMatrix &o, const CVector &sinv)
{
    Matrix q = sinv.asDiagonal() * (o.transpose().cast<Cplx>() * xb);
    return q.real();
}

void emit_flag(Circuit &c, const std::vector<int> &mux, int target, const RVector &tz,
               const RVector &ty)
{
    if (mux.empty()) {
        c.add(Gate::rz(tz(0), target));
        c.add(Gate::ry(ty(0), target));
    }
    else {
        c.add(Gate::mux_flag(tz, ty, mux, target));
    }
}

// One multiplexed single-qubit layer: absorbs the carried diagonals and returns new ones.
void flag_layer(Circuit &out, std::vector<Matrix> &layer, std::vector<CVector> &carry,
                const std::vector<int> &mux, int target, bool kappa)
{
    const auto nblk = static_cast<Eigen::Index>(layer.size());
    for (Eigen::Index j = 0; j < nblk; ++j) {
        layer[j] = layer[j] * carry[j].asDiagonal();
    }
    if (kappa && !mux.empty()) {
        MuxFlagDecomp d = dec_mux_1QF(layer, mux, target);
        out.extend(d.flags);
        for (Eigen::Index j = 0; j < nblk; ++j) {
            carry[j] = d.delta.segment(2 * j, 2);
        }
        return;
    }
    RVector tz(nblk), ty(nblk);
    for (Eigen::Index j = 0; j < nblk; ++j) {
        const EulerAngles e = euler_zyz(layer[j]);
        tz(j) = e.theta_z;
        ty(j) = e.theta_y;
        carry[j] = flag_delta(e);
    }
    emit_flag(out, mux, target, tz, ty);
}

FlagFactorization two_qubit_base(const std::vector<Matrix> &blocks, const std::vector<int> &mux,
                                 const std::vector<int> &targ, bool kappa)
{
    const auto nblk = static_cast<Eigen::Index>(blocks.size());
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);

    // Each block: e^{i alpha} exp(i psi/2 ZZ) (a (x) bH) CZ (RX (x) RX) CZ (c (x) Hd).
    std::array<std::vector<Matrix>, 6> layers;
    std::vector<Cplx> scal(nblk);
    std::vector<double> psi(nblk);
    const Matrix cn = cnot01();
    for (Eigen::Index j = 0; j < nblk; ++j) {
        const TwoQubitKak k = asymmetric_two_qubit_decomp(cn * blocks[j]);
        layers[0].push_back(k.c);
        layers[1].push_back(h * k.d);
        layers[2].push_back(rx(k.theta));
        layers[3].push_back(rx(k.phi));
        layers[4].push_back(k.a);
        layers[5].push_back(k.b * h);
        scal[j] = std::exp(kI * k.alpha);
        psi[j] = k.psi;
    }

    FlagFactorization r;
    r.flag = Circuit(0);
    std::vector<CVector> carry0(nblk, CVector::Ones(2)), carry1(nblk, CVector::Ones(2));
    for (int l = 0; l < 3; ++l) {
        if (l > 0) {
            r.flag.add(Gate::cz(targ[0], targ[1]));
        }
        flag_layer(r.flag, layers[2 * l], carry0, mux, targ[0], kappa);
        flag_layer(r.flag, layers[2 * l + 1], carry1, mux, targ[1], kappa);
    }

    r.delta.resize(4 * nblk);
    for (Eigen::Index j = 0; j < nblk; ++j) {
        for (int b0 = 0; b0 < 2; ++b0) {
            for (int b1 = 0; b1 < 2; ++b1) {
                const double z = (b0 == b1) ? 1.0 : -1.0;
                r.delta(4 * j + 2 * b0 + b1) = scal[j] * std::exp(kI * psi[j] / 2.0 * z) *
                                               carry0[j](b0) * carry1[j](b1);
            }
        }
    }
    return r;
}

FlagFactorization one_qubit_base(const std::vector<Matrix> &blocks, const std::vector<int> &mux,
                                 int target, bool kappa)
{
    FlagFactorization r;
    const auto nblk = static_cast<Eigen::Index>(blocks.size());
    std::vector<Matrix> layer = blocks;
    std::vector<CVector> carry(nblk, CVector::Ones(2));
    flag_layer(r.flag, layer, carry, mux, target, kappa);
    r.delta.resize(2 * nblk);
    for (Eigen::Index j = 0; j < nblk; ++j) {
        r.delta.segment(2 * j, 2) = carry[j];
    }
    return r;
}

std::vector<int> iota_qubits(int n)
{
    std::vector<int> q(n);
    for (int i = 0; i < n; ++i) {
        q[i] = i;
    }
    return q;
}

} // namespace

Matrix kak_reassemble(const TwoQubitKak &k)
{
    const Matrix c = cnot01();
    Matrix rz1 = kron(Matrix::Identity(2, 2), rz(-k.psi));
    return std::exp(kI * k.alpha) * rz1 * c * kron(k.a, k.b) * template_core(k.theta, k.phi) *
           kron(k.c, k.d);
}

FlagFactorization one_qubit_flag(const Matrix &u, int qubit)
{
    require_unitary(u, "one_qubit_flag");
    return one_qubit_base({u}, {}, qubit, false);
}

TwoQubitKak asymmetric_two_qubit_decomp(const Matrix &v)
{
    if (v.rows() != 4 || v.cols() != 4) {
        throw InvalidArgument("asymmetric_two_qubit_decomp expects a 4x4 matrix");
    }
    require_unitary(v, "asymmetric_two_qubit_decomp");

    TwoQubitKak k;
    const Matrix cn = cnot01();
    const Matrix v1 = cn * v;
    k.alpha = std::arg(v1.determinant()) / 4.0;
    const Matrix u = std::exp(-kI * k.alpha) * v1;

    const Matrix mb = magic_basis();
    const Matrix ub = mb.adjoint() * u * mb;
    const Matrix gu = ub * ub.transpose();
    const Matrix zzb = mb.adjoint() * zz_exp(1.0) * mb;

    // Choose psi so that exp(i psi ZZ) u has a real gamma trace.
    Cplx p = 0.0, q = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (std::arg(zzb(i, i)) > 0) {
            p += gu(i, i);
        }
        else {
            q += gu(i, i);
        }
    }
    const Cplx diff = p - std::conj(q);
    double psi = 0.0;
    if (std::abs(diff) > kTol.kernel) {
        psi = -std::arg(diff) / 2.0;
    }
    const Matrix w = zz_exp(psi) * u;
    const Matrix wb = mb.adjoint() * w * mb;

    // Pair the gamma eigenvalues into conjugate pairs.
    const RealEigResult ew = eig_symmetric_unitary_real_basis(wb * wb.transpose());
    const RVector &ph = ew.phases;
    static const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    double best = 1e300;
    int bp = 0;
    for (int s = 0; s < 3; ++s) {
        const auto &pr = pairings[s];
        const double e = std::abs(std::exp(kI * (ph(pr[0]) + ph(pr[1]))) - 1.0) +
                         std::abs(std::exp(kI * (ph(pr[2]) + ph(pr[3]))) - 1.0);
        if (e < best) {
            best = e;
            bp = s;
        }
    }
    const double a1 = ph(pairings[bp][0]);
    const double a2 = ph(pairings[bp][2]);
    k.theta = (a1 + a2) / 2.0;
    k.phi = (a1 - a2) / 2.0;
    k.psi = -2.0 * psi;

    const Matrix nb = mb.adjoint() * template_core(k.theta, k.phi) * mb;
    const RealEigResult en = eig_symmetric_unitary_real_basis(nb * nb.transpose());

    // Reorder the template eigenbasis to match the eigenvalues of w.
    RMatrix on(4, 4);
    std::array<bool, 4> used{};
    for (int i = 0; i < 4; ++i) {
        int bj = -1;
        double bd = 1e300;
        for (int j = 0; j < 4; ++j) {
            if (used[j]) {
                continue;
            }
            const double d = std::abs(std::exp(kI * ph(i)) - std::exp(kI * en.phases(j)));
            if (d < bd) {
                bd = d;
                bj = j;
            }
        }
        if (bd > 1e-6) {
            throw NumericalBreakdown("two-qubit template eigenvalues do not match");
        }
        used[bj] = true;
        on.col(i) = en.basis.col(bj);
    }
    RMatrix ow = ew.basis;
    if (ow.determinant() * on.determinant() < 0) {
        ow.col(0) *= -1.0;
    }
    CVector sinv(4);
    for (int i = 0; i < 4; ++i) {
        sinv(i) = std::exp(-kI * ph(i) / 2.0);
    }
    const RMatrix qw = real_right_factor(wb, ow, sinv);
    const RMatrix qn = real_right_factor(nb, on, sinv);
    const Matrix k1 = (ow * on.transpose()).cast<Cplx>();
    const Matrix k2 = (qn.transpose() * qw).cast<Cplx>();

    std::tie(k.a, k.b) = split_kron(mb * k1 * mb.adjoint());
    std::tie(k.c, k.d) = split_kron(mb * k2 * mb.adjoint());

    if (frob_dist(kak_reassemble(k), v) > kTol.reconstruction) {
        throw NumericalBreakdown("two-qubit decomposition failed to reconstruct");
    }
    return k;
}

FlagFactorization two_qubit_flag(const Matrix &v, const std::vector<int> &qubits)
{
    if (qubits.size() != 2) {
        throw InvalidArgument("two_qubit_flag expects two qubits");
    }
    return two_qubit_base({v}, {}, qubits, false);
}

FlagFactorization core_decomp(const std::vector<Matrix> &blocks, const std::vector<int> &mux_qubits,
                              const std::vector<int> &target_qubits, int nb, bool kappa)
{
    const int k = static_cast<int>(mux_qubits.size());
    const int nt = static_cast<int>(target_qubits.size());
    if (blocks.size() != (std::size_t{1} << k)) {
        throw InvalidArgument("core_decomp needs 2^k blocks");
    }
    if (nb < 1 || nb > 2 || nt < nb) {
        throw InvalidArgument("core_decomp needs nb in {1, 2} and nb <= number of targets");
    }
    const Eigen::Index dim = Eigen::Index{1} << nt;
    for (const Matrix &b : blocks) {
        if (b.rows() != dim || b.cols() != dim) {
            throw InvalidArgument("core_decomp block has the wrong dimension");
        }
    }
    if (nt == nb) {
        if (nb == 1) {
            return one_qubit_base(blocks, mux_qubits, target_qubits[0], kappa);
        }
        return two_qubit_base(blocks, mux_qubits, target_qubits, kappa);
    }

    const int t0 = target_qubits[0];
    const std::vector<int> rest(target_qubits.begin() + 1, target_qubits.end());
    std::vector<int> mux1 = mux_qubits;
    mux1.push_back(t0);
    const Eigen::Index half = dim / 2;
    const Eigen::Index nblk = static_cast<Eigen::Index>(blocks.size());

    std::vector<Matrix> k0(2 * nblk), k1(2 * nblk);
    RVector theta_y(nblk * half);
    for (Eigen::Index j = 0; j < nblk; ++j) {
        CsdResult c = csd(blocks[j]);
        k0[2 * j] = c.k00;
        k0[2 * j + 1] = c.k01;
        k1[2 * j] = c.k10;
        k1[2 * j + 1] = c.k11;
        theta_y.segment(j * half, half) = c.theta_y;
    }

    FlagFactorization r;
    FlagFactorization f1 = core_decomp(k1, mux1, rest, nb, kappa);
    r.flag.extend(f1.flag);

    // Split the diagonal on t0 into a multiplexed RZ and a remainder on (mux, rest).
    CVector d10(nblk * half), d11(nblk * half);
    for (Eigen::Index j = 0; j < nblk; ++j) {
        d10.segment(j * half, half) = f1.delta.segment((2 * j) * half, half);
        d11.segment(j * half, half) = f1.delta.segment((2 * j + 1) * half, half);
    }
    auto [theta_z, d2] = balance_diagonal(d10, d11);

    std::vector<int> ctrl = mux_qubits;
    ctrl.insert(ctrl.end(), rest.begin(), rest.end());
    CVector merge0 = d2, merge1 = d2;
    if (kappa) {
        std::vector<Matrix> fb(nblk * half);
        for (Eigen::Index i = 0; i < nblk * half; ++i) {
            fb[i] = ry(theta_y(i)) * rz(theta_z(i));
        }
        MuxFlagDecomp d = dec_mux_1QF(fb, ctrl, t0);
        r.flag.extend(d.flags);
        for (Eigen::Index i = 0; i < nblk * half; ++i) {
            merge0(i) *= d.delta(2 * i);
            merge1(i) *= d.delta(2 * i + 1);
        }
    }
    else {
        r.flag.add(Gate::mux_flag(theta_z, theta_y, ctrl, t0));
    }
    for (Eigen::Index j = 0; j < nblk; ++j) {
        k0[2 * j] = k0[2 * j] * merge0.segment(j * half, half).asDiagonal();
        k0[2 * j + 1] = k0[2 * j + 1] * merge1.segment(j * half, half).asDiagonal();
    }

    FlagFactorization f0 = core_decomp(k0, mux1, rest, nb, kappa);
    r.flag.extend(f0.flag);
    r.delta = f0.delta;
    return r;
}

Circuit flag_synthesize(const Matrix &u, int nb, bool lowered)
{
    require_unitary(u, "flag_synthesize");
    const int n = log2_dim(u.rows());
    if (nb != 1 && nb != 2) {
        throw InvalidArgument("nb must be 1 or 2");
    }
    const std::vector<int> qubits = iota_qubits(n);
    FlagFactorization f = core_decomp({u}, {}, qubits, std::min(nb, n), lowered);
    Circuit c(n);
    c.extend(f.flag);
    if (lowered) {
        c.extend(lower(decompose_diagonal(f.delta, qubits)));
    }
    else {
        c.add(Gate::diagonal(f.delta, qubits));
    }
    return c;
}

} // namespace flagsynth
