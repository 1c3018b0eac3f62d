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

#include "flagsynth/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json_util.hpp"

#include "flagsynth/multiplexers.hpp"

namespace flagsynth {

namespace {

Matrix mat2(Cplx a, Cplx b, Cplx c, Cplx d)
{
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

const Matrix &pauli(char p)
{
    static const Matrix I = Matrix::Identity(2, 2);
    static const Matrix X = mat2(0, 1, 1, 0);
    static const Matrix Y = mat2(0, -kI, kI, 0);
    static const Matrix Z = mat2(1, 0, 0, -1);
    switch (p) {
    case 'X':
        return X;
    case 'Y':
        return Y;
    case 'Z':
        return Z;
    default:
        return I;
    }
}

Matrix rot_matrix(Axis a, double theta)
{
    switch (a) {
    case Axis::X:
        return rx(theta);
    case Axis::Y:
        return ry(theta);
    default:
        return rz(theta);
    }
}

Axis mux_axis(GateKind k)
{
    return k == GateKind::MuxRX ? Axis::X : (k == GateKind::MuxRY ? Axis::Y : Axis::Z);
}

std::vector<int> concat(std::vector<int> a, int b)
{
    a.push_back(b);
    return a;
}

// 2x2 blocks indexed by the control value (first control most significant).
std::vector<Matrix> gate_blocks(const Gate &g)
{
    const double s2 = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
    case GateKind::RZ:
        return {rz(g.angles[0])};
    case GateKind::RY:
        return {ry(g.angles[0])};
    case GateKind::RX:
        return {rx(g.angles[0])};
    case GateKind::H:
        return {mat2(s2, s2, s2, -s2)};
    case GateKind::S:
        return {mat2(1, 0, 0, kI)};
    case GateKind::Sdg:
        return {mat2(1, 0, 0, -kI)};
    case GateKind::X:
        return {pauli('X')};
    case GateKind::Z:
        return {pauli('Z')};
    case GateKind::CNOT:
        return {pauli('I'), pauli('X')};
    case GateKind::CZ:
        return {pauli('I'), pauli('Z')};
    case GateKind::CY:
        return {pauli('I'), pauli('Y')};
    case GateKind::MuxRX:
    case GateKind::MuxRY:
    case GateKind::MuxRZ: {
        std::vector<Matrix> out;
        for (double a : g.angles) {
            out.push_back(rot_matrix(mux_axis(g.kind), a));
        }
        return out;
    }
    case GateKind::MuxFlag: {
        const size_t n = g.angles.size() / 2;
        std::vector<Matrix> out;
        for (size_t j = 0; j < n; ++j) {
            out.push_back(ry(g.angles[n + j]) * rz(g.angles[j]));
        }
        return out;
    }
    case GateKind::MuxU2:
        return g.blocks;
    default:
        throw InvalidArgument("gate has no block form");
    }
}

void validate_gate(const Gate &g)
{
    std::set<int> seen(g.qubits.begin(), g.qubits.end());
    if (seen.size() != g.qubits.size()) {
        throw InvalidArgument("repeated qubit in gate " + kind_name(g.kind));
    }
    for (int q : g.qubits) {
        if (q < 0) {
            throw InvalidArgument("negative qubit index");
        }
    }
}

} // namespace

Gate Gate::rz(double theta, int q) { return Gate{GateKind::RZ, {q}, {theta}, {}, {}}; }
Gate Gate::ry(double theta, int q) { return Gate{GateKind::RY, {q}, {theta}, {}, {}}; }
Gate Gate::rx(double theta, int q) { return Gate{GateKind::RX, {q}, {theta}, {}, {}}; }
Gate Gate::rot(Axis axis, double theta, int q)
{
    return axis == Axis::X ? rx(theta, q) : (axis == Axis::Y ? ry(theta, q) : rz(theta, q));
}
Gate Gate::h(int q) { return Gate{GateKind::H, {q}, {}, {}, {}}; }
Gate Gate::s(int q) { return Gate{GateKind::S, {q}, {}, {}, {}}; }
Gate Gate::sdg(int q) { return Gate{GateKind::Sdg, {q}, {}, {}, {}}; }
Gate Gate::x(int q) { return Gate{GateKind::X, {q}, {}, {}, {}}; }
Gate Gate::z(int q) { return Gate{GateKind::Z, {q}, {}, {}, {}}; }
Gate Gate::cnot(int c, int t) { return Gate{GateKind::CNOT, {c, t}, {}, {}, {}}; }
Gate Gate::cz(int c, int t) { return Gate{GateKind::CZ, {c, t}, {}, {}, {}}; }
Gate Gate::cy(int c, int t) { return Gate{GateKind::CY, {c, t}, {}, {}, {}}; }
Gate Gate::global_phase(double alpha) { return Gate{GateKind::GlobalPhase, {}, {alpha}, {}, {}}; }

Gate Gate::mux_rot(Axis axis, const RVector &angles, const std::vector<int> &controls, int target)
{
    if (angles.size() != (Eigen::Index{1} << controls.size())) {
        throw InvalidArgument("mux_rot angle count must be 2^k");
    }
    GateKind k = axis == Axis::X ? GateKind::MuxRX
                                 : (axis == Axis::Y ? GateKind::MuxRY : GateKind::MuxRZ);
    Gate g{k, concat(controls, target), std::vector<double>(angles.begin(), angles.end()), {}, {}};
    validate_gate(g);
    return g;
}

Gate Gate::mux_flag(const RVector &theta_z, const RVector &theta_y,
                    const std::vector<int> &controls, int target)
{
    const Eigen::Index n = Eigen::Index{1} << controls.size();
    if (theta_z.size() != n || theta_y.size() != n) {
        throw InvalidArgument("mux_flag angle count must be 2^k");
    }
    Gate g{GateKind::MuxFlag, concat(controls, target), {}, {}, {}};
    g.angles.assign(theta_z.begin(), theta_z.end());
    g.angles.insert(g.angles.end(), theta_y.begin(), theta_y.end());
    validate_gate(g);
    return g;
}

Gate Gate::diagonal(const CVector &phases, const std::vector<int> &qubits)
{
    if (phases.size() != (Eigen::Index{1} << qubits.size())) {
        throw InvalidArgument("diagonal phase count must be 2^n");
    }
    Gate g{GateKind::Diagonal, qubits, {}, std::vector<Cplx>(phases.begin(), phases.end()), {}};
    validate_gate(g);
    return g;
}

Gate Gate::mux_u2(const std::vector<Matrix> &blocks, const std::vector<int> &controls,
                  int target)
{
    if (blocks.size() != (size_t{1} << controls.size())) {
        throw InvalidArgument("mux_u2 block count must be 2^k");
    }
    for (const auto &b : blocks) {
        if (b.rows() != 2 || b.cols() != 2) {
            throw InvalidArgument("mux_u2 blocks must be 2x2");
        }
    }
    Gate g{GateKind::MuxU2, concat(controls, target), {}, {}, blocks};
    validate_gate(g);
    return g;
}

bool Gate::is_elementary() const
{
    return static_cast<int>(kind) <= static_cast<int>(GateKind::GlobalPhase);
}

bool Gate::is_rotation() const
{
    return kind == GateKind::RZ || kind == GateKind::RY || kind == GateKind::RX;
}

bool Gate::is_two_qubit_clifford() const
{
    return kind == GateKind::CNOT || kind == GateKind::CZ || kind == GateKind::CY;
}

int Gate::num_controls() const
{
    if (kind == GateKind::GlobalPhase || kind == GateKind::Diagonal) {
        return 0;
    }
    return static_cast<int>(qubits.size()) - 1;
}

std::vector<int> Gate::controls() const
{
    if (qubits.empty()) {
        return {};
    }
    return std::vector<int>(qubits.begin(), qubits.end() - 1);
}

bool Gate::operator==(const Gate &o) const
{
    if (kind != o.kind || qubits != o.qubits || angles != o.angles || phases != o.phases ||
        blocks.size() != o.blocks.size()) {
        return false;
    }
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].rows() != o.blocks[i].rows() || blocks[i].cols() != o.blocks[i].cols() ||
            blocks[i] != o.blocks[i]) {
            return false;
        }
    }
    return true;
}

void Circuit::add(const Gate &g)
{
    for (int q : g.qubits) {
        width = std::max(width, q + 1);
    }
    gates.push_back(g);
}

void Circuit::extend(const Circuit &c)
{
    width = std::max(width, c.width);
    gates.insert(gates.end(), c.gates.begin(), c.gates.end());
}

bool Circuit::operator==(const Circuit &o) const { return width == o.width && gates == o.gates; }

std::string kind_name(GateKind k)
{
    switch (k) {
    case GateKind::RZ:
        return "rz";
    case GateKind::RY:
        return "ry";
    case GateKind::RX:
        return "rx";
    case GateKind::H:
        return "h";
    case GateKind::S:
        return "s";
    case GateKind::Sdg:
        return "sdg";
    case GateKind::X:
        return "x";
    case GateKind::Z:
        return "z";
    case GateKind::CNOT:
        return "cnot";
    case GateKind::CZ:
        return "cz";
    case GateKind::CY:
        return "cy";
    case GateKind::GlobalPhase:
        return "global_phase";
    case GateKind::MuxRX:
        return "mux_rx";
    case GateKind::MuxRY:
        return "mux_ry";
    case GateKind::MuxRZ:
        return "mux_rz";
    case GateKind::MuxFlag:
        return "mux_flag";
    case GateKind::Diagonal:
        return "diagonal";
    case GateKind::MuxU2:
        return "mux_u2";
    }
    return "unknown";
}

void apply_gate(Matrix &m, const Gate &g, int width)
{
    for (int q : g.qubits) {
        if (q >= width) {
            throw InvalidArgument("qubit index exceeds circuit width");
        }
    }
    const Eigen::Index dim = m.rows();
    auto mask_of = [&](int q) { return Eigen::Index{1} << (width - 1 - q); };

    if (g.kind == GateKind::GlobalPhase) {
        m *= std::exp(kI * g.angles[0]);
        return;
    }
    if (g.kind == GateKind::Diagonal) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            size_t idx = 0;
            for (int q : g.qubits) {
                idx = (idx << 1) | ((i & mask_of(q)) ? 1u : 0u);
            }
            m.row(i) *= g.phases[idx];
        }
        return;
    }
    const std::vector<Matrix> blocks = gate_blocks(g);
    const std::vector<int> ctrls = g.controls();
    const Eigen::Index tmask = mask_of(g.target());
    std::vector<bool> trivial(blocks.size());
    for (size_t j = 0; j < blocks.size(); ++j) {
        trivial[j] = blocks[j].isIdentity(0.0);
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & tmask) {
            continue;
        }
        size_t j = 0;
        for (int c : ctrls) {
            j = (j << 1) | ((i & mask_of(c)) ? 1u : 0u);
        }
        if (trivial[j]) {
            continue;
        }
        const Matrix &b = blocks[j];
        const Eigen::Index i1 = i | tmask;
        Eigen::RowVectorXcd r0 = m.row(i);
        Eigen::RowVectorXcd r1 = m.row(i1);
        m.row(i) = b(0, 0) * r0 + b(0, 1) * r1;
        m.row(i1) = b(1, 0) * r0 + b(1, 1) * r1;
    }
}

Matrix to_matrix(const Circuit &c)
{
    if (c.width > 12) {
        throw WidthExceeded("to_matrix supports at most 12 qubits, got " +
                            std::to_string(c.width));
    }
    const Eigen::Index dim = Eigen::Index{1} << c.width;
    Matrix m = Matrix::Identity(dim, dim);
    for (const Gate &g : c.gates) {
        apply_gate(m, g, c.width);
    }
    return m;
}

CVector simulate(const Circuit &c, const CVector &psi)
{
    if (c.width > 24) {
        throw WidthExceeded("simulate supports at most 24 qubits");
    }
    if (psi.size() != (Eigen::Index{1} << c.width)) {
        throw InvalidArgument("state dimension does not match circuit width");
    }
    Matrix m = psi;
    for (const Gate &g : c.gates) {
        apply_gate(m, g, c.width);
    }
    return m.col(0);
}

ResourceCount count_elementary(const Circuit &c)
{
    ResourceCount r;
    for (const Gate &g : c.gates) {
        if (g.is_rotation()) {
            ++r.rotations;
        }
        else if (g.is_two_qubit_clifford()) {
            ++r.two_qubit_cliffords;
        }
        else if (g.kind == GateKind::GlobalPhase) {
            ++r.global_phases;
        }
        else if (g.kind == GateKind::Diagonal) {
            r.parameters += static_cast<long long>(g.phases.size());
        }
        else if (g.is_elementary()) {
            ++r.other_cliffords;
        }
    }
    r.parameters += r.rotations + r.global_phases;
    return r;
}

ResourceCount count(const Circuit &c) { return count_elementary(lower(c)); }

long long count_kind(const Circuit &c, GateKind k)
{
    return std::count_if(c.gates.begin(), c.gates.end(),
                         [k](const Gate &g) { return g.kind == k; });
}

Circuit lower(const Circuit &c)
{
    Circuit out(c.width);
    for (const Gate &g : c.gates) {
        switch (g.kind) {
        case GateKind::MuxRX:
        case GateKind::MuxRY:
        case GateKind::MuxRZ: {
            const Axis a = mux_axis(g.kind);
            const RVector ang = Eigen::Map<const RVector>(g.angles.data(),
                                                          static_cast<Eigen::Index>(g.angles.size()));
            out.extend(mottonen(ang, a, g.controls(), g.target(), Sym::None,
                                a == Axis::X ? Entangler::CZ : Entangler::CNOT));
            break;
        }
        case GateKind::MuxFlag: {
            const Eigen::Index n = static_cast<Eigen::Index>(g.angles.size() / 2);
            const RVector tz = Eigen::Map<const RVector>(g.angles.data(), n);
            const RVector ty = Eigen::Map<const RVector>(g.angles.data() + n, n);
            out.extend(mottonen(tz, Axis::Z, g.controls(), g.target(), Sym::Right));
            out.extend(mottonen(ty, Axis::Y, g.controls(), g.target(), Sym::Left));
            break;
        }
        case GateKind::Diagonal: {
            const CVector ph = Eigen::Map<const CVector>(g.phases.data(),
                                                         static_cast<Eigen::Index>(g.phases.size()));
            out.extend(lower(decompose_diagonal(ph, g.qubits)));
            break;
        }
        case GateKind::MuxU2: {
            MuxFlagDecomp d = dec_mux_1QF(g.blocks, g.controls(), g.target());
            out.extend(d.flags);
            out.extend(lower(decompose_diagonal(d.delta, g.qubits)));
            break;
        }
        default:
            out.add(g);
        }
    }
    out.width = std::max(out.width, c.width);
    return out;
}

namespace {

using namespace detail;

GateKind parse_kind(const std::string &s, const std::string &where)
{
    static const std::vector<GateKind> all = {
        GateKind::RZ,   GateKind::RY,          GateKind::RX,     GateKind::H,      GateKind::S,
        GateKind::Sdg,  GateKind::X,           GateKind::Z,      GateKind::CNOT,   GateKind::CZ,
        GateKind::CY,   GateKind::GlobalPhase, GateKind::MuxRX,  GateKind::MuxRY,  GateKind::MuxRZ,
        GateKind::MuxFlag, GateKind::Diagonal, GateKind::MuxU2};
    for (GateKind k : all) {
        if (kind_name(k) == s) {
            return k;
        }
    }
    fail(where, "unknown gate kind '" + s + "'");
}

} // namespace

std::string emit_json(const Circuit &c)
{
    std::ostringstream os;
    os << "{\n  \"version\": 1,\n  \"width\": " << c.width << ",\n  \"gates\": [";
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const Gate &g = c.gates[i];
        os << (i ? ",\n    " : "\n    ") << "{\"kind\": \"" << kind_name(g.kind) << "\", \"qubits\": [";
        for (size_t q = 0; q < g.qubits.size(); ++q) {
            os << (q ? ", " : "") << g.qubits[q];
        }
        os << "]";
        if (!g.angles.empty()) {
            os << ", \"angles\": [";
            for (size_t a = 0; a < g.angles.size(); ++a) {
                os << (a ? ", " : "") << fmt_double(g.angles[a]);
            }
            os << "]";
        }
        if (!g.phases.empty()) {
            os << ", \"phases\": [";
            for (size_t a = 0; a < g.phases.size(); ++a) {
                os << (a ? ", " : "") << fmt_cplx(g.phases[a]);
            }
            os << "]";
        }
        if (!g.blocks.empty()) {
            os << ", \"blocks\": [";
            for (size_t b = 0; b < g.blocks.size(); ++b) {
                const Matrix &m = g.blocks[b];
                os << (b ? ", " : "") << "[[" << fmt_cplx(m(0, 0)) << ", " << fmt_cplx(m(0, 1))
                   << "], [" << fmt_cplx(m(1, 0)) << ", " << fmt_cplx(m(1, 1)) << "]]";
            }
            os << "]";
        }
        os << "}";
    }
    os << (c.gates.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

Circuit parse_json(const std::string &text)
{
    const json doc = parse_document(text);
    require_version(doc);
    if (!doc.contains("width") || !doc["width"].is_number_integer() || doc["width"].get<int>() < 0) {
        fail("width", "expected a nonnegative integer");
    }
    if (!doc.contains("gates") || !doc["gates"].is_array()) {
        fail("gates", "expected an array");
    }
    Circuit c(doc["width"].get<int>());
    const json &gates = doc["gates"];
    for (size_t i = 0; i < gates.size(); ++i) {
        const std::string where = "gates[" + std::to_string(i) + "]";
        const json &jg = gates[i];
        if (!jg.is_object() || !jg.contains("kind") || !jg["kind"].is_string()) {
            fail(where, "expected an object with a string 'kind'");
        }
        Gate g;
        g.kind = parse_kind(jg["kind"].get<std::string>(), where + ".kind");
        if (!jg.contains("qubits") || !jg["qubits"].is_array()) {
            fail(where + ".qubits", "expected an array");
        }
        for (size_t q = 0; q < jg["qubits"].size(); ++q) {
            const json &v = jg["qubits"][q];
            if (!v.is_number_integer()) {
                fail(where + ".qubits[" + std::to_string(q) + "]", "expected an integer");
            }
            const int qi = v.get<int>();
            if (qi < 0 || qi >= c.width) {
                fail(where + ".qubits[" + std::to_string(q) + "]",
                     "qubit index " + std::to_string(qi) + " out of range for width " +
                         std::to_string(c.width));
            }
            g.qubits.push_back(qi);
        }
        if (std::set<int>(g.qubits.begin(), g.qubits.end()).size() != g.qubits.size()) {
            fail(where + ".qubits", "repeated qubit index");
        }
        if (jg.contains("angles")) {
            if (!jg["angles"].is_array()) {
                fail(where + ".angles", "expected an array");
            }
            for (size_t a = 0; a < jg["angles"].size(); ++a) {
                g.angles.push_back(
                    as_double(jg["angles"][a], where + ".angles[" + std::to_string(a) + "]"));
            }
        }
        if (jg.contains("phases")) {
            if (!jg["phases"].is_array()) {
                fail(where + ".phases", "expected an array");
            }
            for (size_t a = 0; a < jg["phases"].size(); ++a) {
                g.phases.push_back(
                    as_cplx(jg["phases"][a], where + ".phases[" + std::to_string(a) + "]"));
            }
        }
        if (jg.contains("blocks")) {
            if (!jg["blocks"].is_array()) {
                fail(where + ".blocks", "expected an array");
            }
            for (size_t b = 0; b < jg["blocks"].size(); ++b) {
                const std::string wb = where + ".blocks[" + std::to_string(b) + "]";
                const json &jb = jg["blocks"][b];
                if (!jb.is_array() || jb.size() != 2 || !jb[0].is_array() || !jb[1].is_array() ||
                    jb[0].size() != 2 || jb[1].size() != 2) {
                    fail(wb, "expected a 2x2 array");
                }
                Matrix m(2, 2);
                for (int r = 0; r < 2; ++r) {
                    for (int k = 0; k < 2; ++k) {
                        m(r, k) = as_cplx(jb[r][k], wb);
                    }
                }
                g.blocks.push_back(m);
            }
        }
        // Arity checks.
        const size_t nq = g.qubits.size();
        auto need = [&](bool ok, const std::string &msg) {
            if (!ok) {
                fail(where, msg);
            }
        };
        switch (g.kind) {
        case GateKind::RZ:
        case GateKind::RY:
        case GateKind::RX:
            need(nq == 1 && g.angles.size() == 1, "rotation needs one qubit and one angle");
            break;
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::X:
        case GateKind::Z:
            need(nq == 1, "single-qubit gate needs one qubit");
            break;
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CY:
            need(nq == 2, "two-qubit gate needs two qubits");
            break;
        case GateKind::GlobalPhase:
            need(nq == 0 && g.angles.size() == 1, "global_phase needs one angle and no qubits");
            break;
        case GateKind::MuxRX:
        case GateKind::MuxRY:
        case GateKind::MuxRZ:
            need(nq >= 1 && g.angles.size() == (size_t{1} << (nq - 1)),
                 "multiplexed rotation needs 2^k angles");
            break;
        case GateKind::MuxFlag:
            need(nq >= 1 && g.angles.size() == (size_t{2} << (nq - 1)),
                 "mux_flag needs 2 * 2^k angles");
            break;
        case GateKind::Diagonal:
            need(g.phases.size() == (size_t{1} << nq), "diagonal needs 2^n phases");
            break;
        case GateKind::MuxU2:
            need(nq >= 1 && g.blocks.size() == (size_t{1} << (nq - 1)), "mux_u2 needs 2^k blocks");
            break;
        }
        c.gates.push_back(g);
    }
    return c;
}

std::string emit_qasm(const Circuit &c)
{
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.width << "];\n";
    for (const Gate &g : c.gates) {
        if (!g.is_elementary()) {
            throw NotLowered("emit_qasm received hierarchical gate " + kind_name(g.kind));
        }
        auto q = [&](size_t i) { return "q[" + std::to_string(g.qubits[i]) + "]"; };
        switch (g.kind) {
        case GateKind::RZ:
        case GateKind::RY:
        case GateKind::RX:
            os << kind_name(g.kind) << "(" << fmt_double(g.angles[0]) << ") " << q(0) << ";\n";
            break;
        case GateKind::CNOT:
            os << "cx " << q(0) << ", " << q(1) << ";\n";
            break;
        case GateKind::CZ:
        case GateKind::CY:
            os << kind_name(g.kind) << " " << q(0) << ", " << q(1) << ";\n";
            break;
        case GateKind::GlobalPhase:
            os << "// global_phase " << fmt_double(g.angles[0]) << "\n";
            break;
        default:
            os << kind_name(g.kind) << " " << q(0) << ";\n";
        }
    }
    return os.str();
}

} // namespace flagsynth
