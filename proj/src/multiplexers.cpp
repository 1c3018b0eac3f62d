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

#include "flagsynth/multiplexers.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace flagsynth {

namespace {

// Gray-code transition i -> i+1 (cyclic) flips this bit.
int transition_bit(Eigen::Index i, int k)
{
    const Eigen::Index nxt = i + 1;
    if (nxt == (Eigen::Index{1} << k)) {
        return k - 1;
    }
    return std::countr_zero(static_cast<unsigned long long>(nxt));
}

Eigen::Index gray(Eigen::Index i) { return i ^ (i >> 1); }

void check_entangler(Axis axis, Entangler ent)
{
    const bool bad = (axis == Axis::X && ent == Entangler::CNOT) ||
                     (axis == Axis::Y && ent == Entangler::CY) ||
                     (axis == Axis::Z && ent == Entangler::CZ);
    if (bad) {
        throw IncompatibleEntangler("entangler Pauli commutes with the rotation axis");
    }
}

CVector one_flag_delta(const EulerAngles &e)
{
    CVector d(2);
    d(0) = std::exp(-kI * (e.phi + e.omega / 2.0));
    d(1) = std::exp(-kI * (e.phi - e.omega / 2.0));
    return d;
}

MuxFlagDecomp dec_mux_rec(const std::vector<Matrix> &blocks, const std::vector<int> &controls,
                          int target)
{
    const size_t k = controls.size();
    MuxFlagDecomp out;
    if (k == 0) {
        const EulerAngles e = euler_zyz(blocks[0]);
        out.flags.add(Gate::rz(e.theta_z, target));
        out.flags.add(Gate::ry(e.theta_y, target));
        out.delta = one_flag_delta(e);
        return out;
    }
    const size_t h = blocks.size() / 2;
    const std::vector<int> rest(controls.begin() + 1, controls.end());
    std::vector<DemuxU2> nodes(h);
    std::vector<Matrix> l1(h);
    for (size_t j = 0; j < h; ++j) {
        nodes[j] = demux_u2_node(blocks[j], blocks[h + j]);
        l1[j] = nodes[j].l1;
    }
    MuxFlagDecomp f1 = dec_mux_rec(l1, rest, target);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::exp(kI * kPi / 4.0);
    d(1, 1) = std::exp(-kI * kPi / 4.0);
    std::vector<Matrix> l0(h);
    for (size_t j = 0; j < h; ++j) {
        Matrix dj = Matrix::Zero(2, 2);
        dj(0, 0) = f1.delta(static_cast<Eigen::Index>(2 * j));
        dj(1, 1) = f1.delta(static_cast<Eigen::Index>(2 * j + 1));
        l0[j] = nodes[j].l0 * dj * d;
    }
    MuxFlagDecomp f0 = dec_mux_rec(l0, rest, target);

    out.flags = f1.flags;
    out.flags.add(Gate::cz(controls[0], target));
    out.flags.extend(f0.flags);

    const Eigen::Index half = static_cast<Eigen::Index>(2 * h);
    out.delta.resize(2 * half);
    for (size_t j = 0; j < h; ++j) {
        const double rho[2] = {nodes[j].rho0, nodes[j].rho1};
        for (int b = 0; b < 2; ++b) {
            const Eigen::Index idx = static_cast<Eigen::Index>(2 * j) + b;
            out.delta(idx) = std::exp(-kI * rho[b]) * f0.delta(idx);
            out.delta(half + idx) = -kI * std::exp(kI * rho[b]) * f0.delta(idx);
        }
    }
    return out;
}

// Rewrite CZ entanglers as CNOT by moving Hadamards into the neighbouring flags.
Circuit cz_to_cnot(const Circuit &flags, int target)
{
    std::vector<std::vector<Gate>> groups(1);
    for (const Gate &g : flags.gates) {
        if (g.kind == GateKind::CZ) {
            groups.emplace_back();
        }
        else {
            groups.back().push_back(g);
        }
    }
    if (groups.size() == 1) {
        return flags;
    }
    std::vector<int> ctrls;
    for (const Gate &g : flags.gates) {
        if (g.kind == GateKind::CZ) {
            ctrls.push_back(g.qubits[0]);
        }
    }
    Circuit out(flags.width);
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        const bool first = gi == 0, last = gi + 1 == groups.size();
        if (last) {
            out.add(Gate::h(target));
        }
        for (const Gate &g : groups[gi]) {
            if (first || last) {
                out.add(g);
            }
            else if (g.kind == GateKind::RZ) {
                out.add(Gate::rx(g.angles[0], target));
            }
            else {
                out.add(Gate::ry(-g.angles[0], target));
            }
        }
        if (first) {
            out.add(Gate::h(target));
        }
        if (!last) {
            out.add(Gate::cnot(ctrls[gi], target));
        }
    }
    return out;
}

} // namespace

Gate entangler_gate(Entangler e, int c, int t)
{
    switch (e) {
    case Entangler::CY:
        return Gate::cy(c, t);
    case Entangler::CZ:
        return Gate::cz(c, t);
    default:
        return Gate::cnot(c, t);
    }
}

RVector mottonen_angles(const RVector &angles, Sym sym)
{
    const Eigen::Index n = angles.size();
    const int k = log2_dim(n);
    const Eigen::Index shift = sym == Sym::Left && k > 0 ? gray(n - 1) : 0;
    RVector out = RVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index g = gray(i) ^ shift;
        double acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const int par = std::popcount(static_cast<unsigned long long>(j & g)) & 1;
            acc += par ? -angles(j) : angles(j);
        }
        out(i) = acc / static_cast<double>(n);
    }
    return out;
}

Circuit mottonen(const RVector &angles, Axis axis, const std::vector<int> &controls, int target,
                 Sym sym, Entangler ent)
{
    check_entangler(axis, ent);
    const int k = static_cast<int>(controls.size());
    if (angles.size() != (Eigen::Index{1} << k)) {
        throw InvalidArgument("mottonen needs 2^k angles");
    }
    Circuit c;
    if (k == 0) {
        c.add(Gate::rot(axis, angles(0), target));
        return c;
    }
    const RVector hat = mottonen_angles(angles, sym);
    const Eigen::Index n = angles.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        c.add(Gate::rot(axis, hat(i), target));
        if (i + 1 == n && sym != Sym::None) {
            break;
        }
        const int bit = transition_bit(i, k);
        c.add(entangler_gate(ent, controls[static_cast<size_t>(k - 1 - bit)], target));
    }
    return c;
}

std::pair<RVector, CVector> balance_diagonal(const CVector &delta10, const CVector &delta11)
{
    if (delta10.size() != delta11.size()) {
        throw InvalidArgument("balance_diagonal needs equal lengths");
    }
    RVector theta(delta10.size());
    CVector dp(delta10.size());
    for (Eigen::Index i = 0; i < delta10.size(); ++i) {
        theta(i) = std::arg(delta11(i) * std::conj(delta10(i)));
        dp(i) = delta10(i) * std::exp(kI * theta(i) / 2.0);
    }
    return {theta, dp};
}

Circuit decompose_diagonal(const CVector &delta, const std::vector<int> &qubits)
{
    if (delta.size() != (Eigen::Index{1} << qubits.size())) {
        throw InvalidArgument("decompose_diagonal needs 2^n phases");
    }
    Circuit c;
    CVector d = delta;
    std::vector<int> qs = qubits;
    while (!qs.empty()) {
        const Eigen::Index m = d.size() / 2;
        CVector d10(m), d11(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            d10(i) = d(2 * i);
            d11(i) = d(2 * i + 1);
        }
        auto [theta, dp] = balance_diagonal(d10, d11);
        const int t = qs.back();
        qs.pop_back();
        if (qs.empty()) {
            c.add(Gate::rz(theta(0), t));
        }
        else {
            c.add(Gate::mux_rot(Axis::Z, theta, qs, t));
        }
        d = dp;
    }
    c.add(Gate::global_phase(std::arg(d(0))));
    return c;
}

DemuxU2 demux_u2_node(const Matrix &k0, const Matrix &k1)
{
    if (k0.rows() != 2 || k1.rows() != 2 || !is_unitary(k0) || !is_unitary(k1)) {
        throw NonUnitaryInput("demux_u2_node expects two 2x2 unitaries");
    }
    const Matrix x = k0 * k1.adjoint();
    const double phi = std::arg(x.determinant());
    const Cplx a = x(0, 0) * std::exp(-kI * phi / 2.0);
    const double arga = std::abs(a) < kTol.kernel ? 0.0 : std::arg(a);
    DemuxU2 out;
    out.rho0 = (kPi - phi) / 4.0 - arga / 2.0;
    out.rho1 = (3.0 * kPi - phi) / 4.0 + arga / 2.0;
    Matrix r = Matrix::Zero(2, 2);
    r(0, 0) = std::exp(kI * out.rho0);
    r(1, 1) = std::exp(kI * out.rho1);
    const Matrix y = r * x * r;
    Matrix h = -kI * y;
    h = (h + h.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const RVector ev = es.eigenvalues();
    if (std::abs(ev(0) + 1.0) > 1e-10 || std::abs(ev(1) - 1.0) > 1e-10) {
        throw NumericalBreakdown("demux_u2_node eigenvalues are not +-i");
    }
    out.l0.resize(2, 2);
    out.l0.col(0) = es.eigenvectors().col(1);
    out.l0.col(1) = es.eigenvectors().col(0);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::exp(kI * kPi / 4.0);
    d(1, 1) = std::exp(-kI * kPi / 4.0);
    out.l1 = d * out.l0.adjoint() * r.adjoint() * k1;
    const double e0 = frob_dist(r.adjoint() * out.l0 * d * out.l1, k0);
    const double e1 = frob_dist(r * out.l0 * d.adjoint() * out.l1, k1);
    if (e0 > 1e-10 || e1 > 1e-10) {
        throw NumericalBreakdown("demux_u2_node reconstruction " + std::to_string(std::max(e0, e1)));
    }
    return out;
}

MuxFlagDecomp dec_mux_1QF(const std::vector<Matrix> &blocks, const std::vector<int> &controls,
                          int target, Entangler ent)
{
    if (blocks.size() != (size_t{1} << controls.size())) {
        throw InvalidArgument("dec_mux_1QF needs 2^k blocks");
    }
    for (const Matrix &b : blocks) {
        if (b.rows() != 2 || !is_unitary(b)) {
            throw NonUnitaryInput("dec_mux_1QF blocks must be 2x2 unitaries");
        }
    }
    if (ent == Entangler::CY) {
        throw IncompatibleEntangler("dec_mux_1QF supports CZ or CNOT entanglers");
    }
    MuxFlagDecomp out = dec_mux_rec(blocks, controls, target);
    if (ent == Entangler::CNOT) {
        out.flags = cz_to_cnot(out.flags, target);
    }
    return out;
}

} // namespace flagsynth
