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

#include "flagsynth/mps.hpp"

#include <algorithm>
#include <cmath>

#include "json_util.hpp"

namespace flagsynth {

namespace {

constexpr int kMaxStatevectorLength = 20;
constexpr Eigen::Index kMaxStatevectorBond = 16;

// Rows ordered (sigma, l): row sigma * left + l.
Matrix stack_rows(const SiteTensor &t)
{
    Matrix m(2 * t.left(), t.right());
    m << t.a[0], t.a[1];
    return m;
}

SiteTensor unstack_rows(const Matrix &m)
{
    const Eigen::Index l = m.rows() / 2;
    return {{m.topRows(l), m.bottomRows(l)}};
}

Matrix pad(const Matrix &m, Eigen::Index rows, Eigen::Index cols)
{
    Matrix p = Matrix::Zero(rows, cols);
    p.topLeftCorner(m.rows(), m.cols()) = m;
    return p;
}

// Gram-Schmidt with pivoting on the largest residual among the unit vectors.
Matrix extend_orthonormal(const Matrix &basis, Eigen::Index target)
{
    const Eigen::Index dim = basis.rows();
    Matrix out(dim, target);
    Eigen::Index have = basis.cols();
    out.leftCols(have) = basis;
    std::vector<CVector> cand;
    for (Eigen::Index i = 0; i < dim; ++i) {
        cand.push_back(CVector::Unit(dim, i));
    }
    auto project_out = [&](CVector &v, Eigen::Index upto) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < upto; ++j) {
                v -= out.col(j) * out.col(j).dot(v);
            }
        }
    };
    for (CVector &v : cand) {
        project_out(v, have);
    }
    while (have < target) {
        Eigen::Index best = -1;
        double bn = -1.0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double nn = cand[i].norm();
            if (nn > bn + 1e-14) {
                bn = nn;
                best = i;
            }
        }
        out.col(have) = cand[best] / bn;
        ++have;
        for (CVector &v : cand) {
            v -= out.col(have - 1) * out.col(have - 1).dot(v);
        }
    }
    return out;
}

// Replace zero columns (unused padded bond states) by orthonormal completions.
Matrix fill_zero_columns(const Matrix &iso)
{
    std::vector<Eigen::Index> live, dead;
    for (Eigen::Index j = 0; j < iso.cols(); ++j) {
        (iso.col(j).norm() < kTol.reconstruction ? dead : live).push_back(j);
    }
    if (dead.empty()) {
        return iso;
    }
    Matrix b(iso.rows(), static_cast<Eigen::Index>(live.size()));
    for (std::size_t i = 0; i < live.size(); ++i) {
        b.col(static_cast<Eigen::Index>(i)) = iso.col(live[i]);
    }
    const Matrix full = extend_orthonormal(b, iso.cols());
    Matrix out = iso;
    for (std::size_t i = 0; i < dead.size(); ++i) {
        out.col(dead[i]) = full.col(static_cast<Eigen::Index>(live.size() + i));
    }
    return out;
}

int bond_qubits_for(Eigen::Index chi)
{
    if (chi < 2 || (chi & (chi - 1)) != 0) {
        throw InvalidArgument("bond dimension must be a power of two >= 2");
    }
    return log2_dim(chi);
}

struct Prepared {
    int n = 0;
    Eigen::Index chi = 0;
    std::vector<int> bond;
    std::vector<Matrix> sites;   // G for sites L-1 down to n
    std::vector<int> fresh;      // physical qubit of each G
    Matrix tail;                 // unitary on the bond register
};

Prepared prepare(const MPS &in, Eigen::Index chi)
{
    validate(in);
    const int length = in.length();
    if (length < 2) {
        throw InvalidArgument("MPS synthesis needs at least two sites");
    }
    if (left_isometry_error(in) > kTol.unitarity) {
        throw NotIsometry("MPS is not left-canonical");
    }
    Prepared p;
    p.chi = chi > 0 ? chi : default_chi(in);
    p.n = bond_qubits_for(p.chi);
    const MPS mps = pad_bond(in, p.chi);
    for (int q = 0; q < p.n; ++q) {
        p.bond.push_back(q);
    }
    const int split = std::min(p.n, length);
    for (int s = length - 1; s >= split; --s) {
        const SiteTensor &t = mps.tensors[s];
        Matrix iso = pad(stack_rows(SiteTensor{{pad(t.a[0], p.chi, t.right()),
                                                pad(t.a[1], p.chi, t.right())}}),
                         2 * p.chi, p.chi);
        p.sites.push_back(unitary_complete(fill_zero_columns(iso)));
        p.fresh.push_back(s);
    }
    // Contract the first sites into a map from the bond register.
    Matrix acc = Matrix::Ones(1, 1);
    for (int s = 0; s < split; ++s) {
        const SiteTensor &t = mps.tensors[s];
        Matrix next(acc.rows() * 2, t.right());
        for (Eigen::Index r = 0; r < acc.rows(); ++r) {
            next.row(2 * r) = acc.row(r) * t.a[0];
            next.row(2 * r + 1) = acc.row(r) * t.a[1];
        }
        acc = next;
    }
    if (split == length) {
        p.bond.resize(length);
        p.tail = unitary_complete(acc);
    }
    else {
        p.tail = unitary_complete(fill_zero_columns(pad(acc, acc.rows(), p.chi)));
    }
    return p;
}

} // namespace

Eigen::Index MPS::max_bond() const
{
    Eigen::Index m = 1;
    for (const SiteTensor &t : tensors) {
        m = std::max({m, t.left(), t.right()});
    }
    return m;
}

void validate(const MPS &mps)
{
    if (mps.tensors.empty()) {
        throw InvalidArgument("MPS has no sites");
    }
    for (std::size_t s = 0; s < mps.tensors.size(); ++s) {
        const SiteTensor &t = mps.tensors[s];
        if (t.a[0].rows() != t.a[1].rows() || t.a[0].cols() != t.a[1].cols() || t.left() < 1 ||
            t.right() < 1) {
            throw InvalidArgument("site " + std::to_string(s) + " has inconsistent shape");
        }
        if (s > 0 && mps.tensors[s - 1].right() != t.left()) {
            throw InvalidArgument("bond mismatch between sites " + std::to_string(s - 1) + " and " +
                                  std::to_string(s));
        }
    }
    if (mps.tensors.front().left() != 1 || mps.tensors.back().right() != 1) {
        throw InvalidArgument("boundary bonds must be 1");
    }
}

double left_isometry_error(const MPS &mps)
{
    double e = 0.0;
    for (const SiteTensor &t : mps.tensors) {
        const Matrix m = stack_rows(t);
        Matrix g = m.adjoint() * m;
        // Padded bond states are unused and stay zero.
        for (Eigen::Index j = 0; j < g.rows(); ++j) {
            if (m.col(j).norm() < kTol.reconstruction) {
                g(j, j) = 1.0;
            }
        }
        e = std::max(e, (g - Matrix::Identity(g.rows(), g.cols())).norm());
    }
    return e;
}

MPS left_canonicalize(const MPS &mps)
{
    validate(mps);
    MPS out;
    out.canonical_form = CanonicalForm::Left;
    Matrix carry = Matrix::Ones(1, 1);
    for (std::size_t s = 0; s < mps.tensors.size(); ++s) {
        const SiteTensor &t = mps.tensors[s];
        SiteTensor merged{{carry * t.a[0], carry * t.a[1]}};
        const Matrix m = stack_rows(merged);
        const Eigen::Index k = std::min(m.rows(), m.cols());
        Eigen::HouseholderQR<Matrix> qr(m);
        Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), k);
        Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        for (Eigen::Index j = 0; j < k; ++j) {
            const double a = std::abs(r(j, j));
            if (a > 0) {
                const Cplx ph = r(j, j) / a;
                q.col(j) *= ph;
                r.row(j) *= std::conj(ph);
            }
        }
        if (s + 1 == mps.tensors.size()) {
            if (std::abs(r(0, 0)) < kTol.kernel) {
                throw NumericalBreakdown("MPS has zero norm");
            }
            q *= r(0, 0) / std::abs(r(0, 0));
        }
        out.tensors.push_back(unstack_rows(q));
        carry = r;
    }
    return out;
}

MPS pad_bond(const MPS &mps, Eigen::Index chi)
{
    validate(mps);
    if (mps.max_bond() > chi) {
        throw ChiTooSmall("bond " + std::to_string(mps.max_bond()) + " exceeds chi = " +
                          std::to_string(chi));
    }
    MPS out;
    out.canonical_form = mps.canonical_form;
    const std::size_t last = mps.tensors.size() - 1;
    for (std::size_t s = 0; s <= last; ++s) {
        const SiteTensor &t = mps.tensors[s];
        const Eigen::Index l = s == 0 ? 1 : chi;
        const Eigen::Index r = s == last ? 1 : chi;
        out.tensors.push_back({{pad(t.a[0], l, r), pad(t.a[1], l, r)}});
    }
    return out;
}

Matrix unitary_complete(const Matrix &iso)
{
    if (iso.cols() > iso.rows() || iso.cols() == 0) {
        throw NotIsometry("isometry must have between 1 and rows columns");
    }
    const Matrix g = iso.adjoint() * iso;
    if ((g - Matrix::Identity(g.rows(), g.cols())).norm() > kTol.unitarity) {
        throw NotIsometry("columns are not orthonormal");
    }
    Matrix u = extend_orthonormal(iso, iso.rows());
    u.leftCols(iso.cols()) = iso;
    return u;
}

CVector mps_statevector(const MPS &mps)
{
    validate(mps);
    if (mps.length() > kMaxStatevectorLength || mps.max_bond() > kMaxStatevectorBond) {
        throw SizeExceeded("statevector contraction limited to L <= 20 and bond <= 16");
    }
    Matrix acc = Matrix::Ones(1, 1);
    for (const SiteTensor &t : mps.tensors) {
        Matrix next(acc.rows() * 2, t.right());
        for (Eigen::Index r = 0; r < acc.rows(); ++r) {
            next.row(2 * r) = acc.row(r) * t.a[0];
            next.row(2 * r + 1) = acc.row(r) * t.a[1];
        }
        acc = std::move(next);
    }
    return acc.col(0);
}

MPS random_mps(int length, Eigen::Index chi, std::mt19937_64 &rng)
{
    if (length < 1 || chi < 1) {
        throw InvalidArgument("random_mps needs length >= 1 and chi >= 1");
    }
    std::normal_distribution<double> g(0.0, 1.0);
    auto bond = [&](int s) {
        const int e = std::min(s, length - s);
        return e >= 62 ? chi : std::min(chi, Eigen::Index{1} << e);
    };
    MPS m;
    for (int s = 0; s < length; ++s) {
        const Eigen::Index l = bond(s), r = bond(s + 1);
        SiteTensor t;
        for (Matrix &a : t.a) {
            a.resize(l, r);
            for (Eigen::Index j = 0; j < r; ++j) {
                for (Eigen::Index i = 0; i < l; ++i) {
                    const double re = g(rng);
                    a(i, j) = Cplx(re, g(rng));
                }
            }
        }
        m.tensors.push_back(t);
    }
    return left_canonicalize(m);
}

Eigen::Index default_chi(const MPS &mps)
{
    Eigen::Index chi = 2;
    while (chi < mps.max_bond()) {
        chi *= 2;
    }
    return chi;
}

MpsSynthesis mps_synthesize_clifford_rot(const MPS &mps, Eigen::Index chi)
{
    const Prepared p = prepare(mps, chi);
    MpsSynthesis out;
    out.bond_qubits = p.n;
    out.circuit = Circuit(mps.length());
    Matrix carry = Matrix::Identity(p.tail.rows(), p.tail.rows());
    for (std::size_t t = 0; t < p.sites.size(); ++t) {
        const int f = p.fresh[t];
        const Matrix g = p.sites[t] * direct_sum(carry, carry);
        const CsdResult c = csd(g);
        const Demux dm = de_mux(c.k00, c.k01);
        // The CY left over here cancels against the Z multiplexer below.
        const ReDemux rd = re_de_mux(dm.m1, c.theta_y, c.k10, CySide::Left);
        Circuit site;
        const FlagFactorization fa = rec_flag_dec(rd.m10p, p.bond);
        site.extend(fa.flag);
        // The owed CZ acts on the fresh qubit while it is still |0>.
        site.extend(mottonen(rd.theta_y, Axis::Y, p.bond, f, Sym::Left, Entangler::CZ));
        const FlagFactorization fb = rec_flag_dec(rd.m01p * fa.delta.asDiagonal(), p.bond);
        site.extend(fb.flag);
        site.extend(mottonen(dm.theta_z, Axis::Z, p.bond, f, Sym::Left, Entangler::CY));
        carry = dm.m0 * fb.delta.asDiagonal();
        out.circuit.extend(site);
        out.sites.push_back(std::move(site));
    }
    out.tail = sdm(p.tail * carry, p.bond);
    out.circuit.extend(out.tail);
    return out;
}

MpsSynthesis mps_synthesize_skeleton(const MPS &mps, Eigen::Index chi)
{
    const Prepared p = prepare(mps, chi);
    MpsSynthesis out;
    out.bond_qubits = p.n;
    out.circuit = Circuit(mps.length());
    const std::size_t nsites = p.sites.size();
    if (nsites == 0) {
        out.tail = flag_synthesize(p.tail, 1, false);
        out.circuit.extend(out.tail);
        return out;
    }

    // Parallel pass: CSD per site, flag of K10 merged into the preceding site's blocks.
    std::vector<std::array<Matrix, 2>> blocks(nsites);
    std::vector<RVector> theta(nsites);
    Circuit first_flag;
    for (std::size_t t = 0; t < nsites; ++t) {
        const CsdResult c = csd(p.sites[t]);
        const FlagFactorization f = core_decomp({c.k10}, {}, p.bond, 1, false);
        const auto d = f.delta.asDiagonal();
        blocks[t] = {c.k00 * d, c.k01 * d};
        theta[t] = c.theta_y;
        if (t == 0) {
            first_flag = f.flag;
        }
        else {
            Circuit fc(p.n);
            fc.extend(f.flag);
            const Matrix fm = to_matrix(fc);
            blocks[t - 1] = {fm * blocks[t - 1][0], fm * blocks[t - 1][1]};
        }
    }
    blocks[nsites - 1] = {p.tail * blocks[nsites - 1][0], p.tail * blocks[nsites - 1][1]};

    // Sequential sweep: each site's leftover diagonal moves into the next site.
    const Eigen::Index dim = p.chi;
    CVector carry = CVector::Ones(dim);
    for (std::size_t t = 0; t < nsites; ++t) {
        const int f = p.fresh[t];
        Circuit site;
        if (t == 0) {
            site.extend(first_flag);
        }
        site.add(Gate::mux_rot(Axis::Y, theta[t], p.bond, f));
        const FlagFactorization r = core_decomp(
            {blocks[t][0] * carry.asDiagonal(), blocks[t][1] * carry.asDiagonal()}, {f}, p.bond, 1,
            false);
        site.extend(r.flag);
        auto [tz, rest] = balance_diagonal(r.delta.head(dim), r.delta.tail(dim));
        site.add(Gate::mux_rot(Axis::Z, tz, p.bond, f));
        carry = rest;
        out.circuit.extend(site);
        out.sites.push_back(std::move(site));
    }
    out.tail.add(Gate::diagonal(carry, p.bond));
    out.circuit.extend(out.tail);
    return out;
}

Circuit mps_to_circuit_clifford_rot(const MPS &mps, Eigen::Index chi)
{
    return mps_synthesize_clifford_rot(mps, chi).circuit;
}

Circuit mps_skeleton_phase_gradient(const MPS &mps, Eigen::Index chi)
{
    return mps_synthesize_skeleton(mps, chi).circuit;
}

double state_fidelity(const CVector &a, const CVector &b)
{
    if (a.size() != b.size()) {
        throw InvalidArgument("state dimensions differ");
    }
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

MPS parse_mps_json(const std::string &text)
{
    using namespace detail;
    const json doc = parse_document(text);
    require_version(doc);
    if (!doc.contains("length") || !doc["length"].is_number_integer() || doc["length"].get<int>() < 1) {
        fail("length", "expected a positive integer");
    }
    if (!doc.contains("tensors") || !doc["tensors"].is_array()) {
        fail("tensors", "expected an array");
    }
    const json &ts = doc["tensors"];
    if (ts.size() != doc["length"].get<std::size_t>()) {
        fail("tensors", "expected 'length' entries");
    }
    MPS m;
    for (std::size_t s = 0; s < ts.size(); ++s) {
        const std::string where = "tensors[" + std::to_string(s) + "]";
        const json &jt = ts[s];
        if (!jt.is_object() || !jt.contains("shape") || !jt["shape"].is_array() ||
            jt["shape"].size() != 3) {
            fail(where + ".shape", "expected [left, 2, right]");
        }
        for (const json &v : jt["shape"]) {
            if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 4096) {
                fail(where + ".shape", "dimensions must be integers in [1, 4096]");
            }
        }
        const Eigen::Index l = jt["shape"][0].get<Eigen::Index>();
        const Eigen::Index r = jt["shape"][2].get<Eigen::Index>();
        if (jt["shape"][1].get<int>() != 2) {
            fail(where + ".shape[1]", "physical dimension must be 2");
        }
        if (!jt.contains("data") || !jt["data"].is_array()) {
            fail(where + ".data", "expected an array");
        }
        const json &d = jt["data"];
        const auto count = static_cast<std::size_t>(l * 2 * r);
        const bool flat = d.size() == 2 * count && (d.empty() || d[0].is_number());
        if (!flat && d.size() != count) {
            fail(where + ".data", "expected " + std::to_string(count) + " [re, im] pairs");
        }
        SiteTensor t{{Matrix(l, r), Matrix(l, r)}};
        std::size_t idx = 0;
        for (Eigen::Index i = 0; i < l; ++i) {
            for (int sg = 0; sg < 2; ++sg) {
                for (Eigen::Index j = 0; j < r; ++j, ++idx) {
                    const std::string w = where + ".data[" + std::to_string(idx) + "]";
                    t.a[sg](i, j) = flat ? Cplx(as_double(d[2 * idx], w), as_double(d[2 * idx + 1], w))
                                         : as_cplx(d[idx], w);
                }
            }
        }
        m.tensors.push_back(std::move(t));
    }
    try {
        validate(m);
    }
    catch (const InvalidArgument &e) {
        fail("tensors", e.what());
    }
    return m;
}

std::string emit_mps_json(const MPS &mps)
{
    using namespace detail;
    std::string s = "{\"version\": 1, \"length\": " + std::to_string(mps.length()) +
                    ", \"tensors\": [";
    for (std::size_t k = 0; k < mps.tensors.size(); ++k) {
        const SiteTensor &t = mps.tensors[k];
        s += k ? ",\n  " : "\n  ";
        s += "{\"shape\": [" + std::to_string(t.left()) + ", 2, " + std::to_string(t.right()) +
             "], \"data\": [";
        bool first = true;
        for (Eigen::Index i = 0; i < t.left(); ++i) {
            for (int sg = 0; sg < 2; ++sg) {
                for (Eigen::Index j = 0; j < t.right(); ++j) {
                    s += first ? "" : ", ";
                    s += fmt_cplx(t.a[sg](i, j));
                    first = false;
                }
            }
        }
        s += "]}";
    }
    s += "\n]}\n";
    return s;
}

} // namespace flagsynth
