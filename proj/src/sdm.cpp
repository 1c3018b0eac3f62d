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

#include "flagsynth/sdm.hpp"

namespace flagsynth {

namespace {

Matrix z_first(Eigen::Index dim)
{
    Matrix z = Matrix::Identity(dim, dim);
    for (Eigen::Index i = dim / 2; i < dim; ++i) {
        z(i, i) = -1.0;
    }
    return z;
}

CVector half_phases(const RVector &theta, double sign)
{
    CVector d(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        d(i) = std::exp(-kI * sign * theta(i) / 2.0);
    }
    return d;
}

void add_euler(Circuit &c, const Matrix &u, int q, double &phase)
{
    const EulerAngles e = euler_zyz(u);
    c.add(Gate::rz(e.theta_z, q));
    c.add(Gate::ry(e.theta_y, q));
    c.add(Gate::rz(e.omega, q));
    phase -= e.phi;
}

struct CsdDemux {
    Demux d0, d1;
    RVector theta_y;
};

CsdDemux split(const Matrix &v)
{
    CsdResult c = csd(v);
    return {de_mux(c.k00, c.k01), de_mux(c.k10, c.k11), c.theta_y};
}

} // namespace

Demux de_mux(const Matrix &k0, const Matrix &k1)
{
    if (k0.rows() != k1.rows() || k0.rows() != k0.cols() || k1.rows() != k1.cols()) {
        throw InvalidArgument("de_mux expects two square matrices of equal size");
    }
    require_unitary(k0, "de_mux");
    require_unitary(k1, "de_mux");
    const EigResult e = eig_unitary(k0 * k1.adjoint());
    Demux r;
    r.m0 = e.basis;
    r.theta_z = -e.phases;
    r.m1 = half_phases(r.theta_z, 1.0).asDiagonal() * r.m0.adjoint() * k1;
    const Matrix d = half_phases(r.theta_z, 1.0).asDiagonal();
    if (frob_dist(r.m0 * d * r.m1, k0) > kTol.reconstruction ||
        frob_dist(r.m0 * d.adjoint() * r.m1, k1) > kTol.reconstruction) {
        throw NumericalBreakdown("de_mux failed to reconstruct");
    }
    return r;
}

ReDemux re_de_mux(const Matrix &m01, const RVector &theta_y, const Matrix &m10, CySide side)
{
    if (m01.rows() != theta_y.size() || m10.rows() != theta_y.size()) {
        throw InvalidArgument("re_de_mux dimension mismatch");
    }
    const Matrix z = z_first(m01.rows());
    const Matrix kp = m01 * half_phases(theta_y, 1.0).asDiagonal() * m10;
    Matrix km = m01 * half_phases(theta_y, -1.0).asDiagonal() * m10;
    switch (side) {
    case CySide::Both:
        km = z * km * z;
        break;
    case CySide::Right:
        km = km * z;
        break;
    case CySide::Left:
        km = z * km;
        break;
    }
    Demux d = de_mux(kp, km);
    return {d.m0, d.theta_z, d.m1};
}

Circuit two_qubit_unitary(const Matrix &v, const std::vector<int> &qubits)
{
    if (qubits.size() != 2) {
        throw InvalidArgument("two_qubit_unitary expects two qubits");
    }
    const TwoQubitKak k = asymmetric_two_qubit_decomp(v);
    const int q0 = qubits[0], q1 = qubits[1];
    Circuit c;
    double phase = k.alpha;
    add_euler(c, k.c, q0, phase);
    add_euler(c, k.d, q1, phase);
    c.add(Gate::cnot(q0, q1));
    c.add(Gate::rx(k.theta, q0));
    c.add(Gate::rz(k.phi, q1));
    c.add(Gate::cnot(q0, q1));
    add_euler(c, k.a, q0, phase);
    add_euler(c, k.b, q1, phase);
    c.add(Gate::cnot(q0, q1));
    c.add(Gate::rz(-k.psi, q1));
    c.add(Gate::global_phase(phase));
    return c;
}

FlagFactorization rec_flag_dec(const Matrix &v, const std::vector<int> &qubits)
{
    require_unitary(v, "rec_flag_dec");
    const int n = static_cast<int>(qubits.size());
    if (v.rows() != (Eigen::Index{1} << n)) {
        throw InvalidArgument("rec_flag_dec dimension does not match qubit count");
    }
    if (n == 1) {
        return one_qubit_flag(v, qubits[0]);
    }
    if (n == 2) {
        return two_qubit_flag(v, qubits);
    }
    const int q0 = qubits[0];
    const std::vector<int> rest(qubits.begin() + 1, qubits.end());
    const CsdDemux s = split(v);
    const ReDemux rd = re_de_mux(s.d0.m1, s.theta_y, s.d1.m0, CySide::Right);

    FlagFactorization r;
    FlagFactorization f11 = rec_flag_dec(s.d1.m1, rest);
    r.flag.extend(f11.flag);
    r.flag.extend(mottonen(s.d1.theta_z, Axis::Z, rest, q0, Sym::Right, Entangler::CY));
    FlagFactorization f10 = rec_flag_dec(rd.m10p * f11.delta.asDiagonal(), rest);
    r.flag.extend(f10.flag);
    r.flag.extend(mottonen(rd.theta_y, Axis::Y, rest, q0, Sym::Right, Entangler::CZ));

    // The owed CZ and the final RZ multiplexer fold into a q0-multiplexed pair.
    const Matrix z = z_first(rd.m01p.rows());
    const Matrix kt0 = s.d0.m0 * half_phases(s.d0.theta_z, 1.0).asDiagonal() * rd.m01p *
                       f10.delta.asDiagonal();
    const Matrix kt1 = s.d0.m0 * half_phases(s.d0.theta_z, -1.0).asDiagonal() * rd.m01p * z *
                       f10.delta.asDiagonal();
    FlagFactorization f0 = core_decomp({kt0, kt1}, {q0}, rest, 2, true);
    r.flag.extend(f0.flag);
    r.delta = f0.delta;
    return r;
}

Circuit sdm(const Matrix &v, const std::vector<int> &qubits)
{
    require_unitary(v, "sdm");
    const int n = static_cast<int>(qubits.size());
    if (n < 1 || v.rows() != (Eigen::Index{1} << n)) {
        throw InvalidArgument("sdm dimension does not match qubit count");
    }
    if (n == 1) {
        Circuit c;
        double phase = 0.0;
        add_euler(c, v, qubits[0], phase);
        c.add(Gate::global_phase(phase));
        return c;
    }
    if (n == 2) {
        return two_qubit_unitary(v, qubits);
    }
    const int q0 = qubits[0];
    const std::vector<int> rest(qubits.begin() + 1, qubits.end());
    const CsdDemux s = split(v);
    const ReDemux rd = re_de_mux(s.d0.m1, s.theta_y, s.d1.m0, CySide::Both);

    Circuit c;
    FlagFactorization f11 = rec_flag_dec(s.d1.m1, rest);
    c.extend(f11.flag);
    c.extend(mottonen(s.d1.theta_z, Axis::Z, rest, q0, Sym::Right, Entangler::CY));
    FlagFactorization f10 = rec_flag_dec(rd.m10p * f11.delta.asDiagonal(), rest);
    c.extend(f10.flag);
    c.extend(mottonen(rd.theta_y, Axis::Y, rest, q0, Sym::None, Entangler::CNOT));
    FlagFactorization f01 = rec_flag_dec(rd.m01p * f10.delta.asDiagonal(), rest);
    c.extend(f01.flag);
    c.extend(mottonen(s.d0.theta_z, Axis::Z, rest, q0, Sym::Left, Entangler::CY));
    c.extend(sdm(s.d0.m0 * f01.delta.asDiagonal(), rest));
    return c;
}

Circuit sdm(const Matrix &v)
{
    const int n = log2_dim(v.rows());
    std::vector<int> q(n);
    for (int i = 0; i < n; ++i) {
        q[i] = i;
    }
    Circuit c(n);
    c.extend(sdm(v, q));
    return c;
}

} // namespace flagsynth
