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

#include "flagsynth/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "flagsynth/mps.hpp"
#include "flagsynth/resources.hpp"
#include "json_util.hpp"

namespace flagsynth {

namespace {

constexpr int kMaxQubits = 12;
constexpr double kFidelityTol = 1e-9;

struct VerificationFailure : Error {
    explicit VerificationFailure(const std::string &m) : Error("VerificationFailure: " + m) {}
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
}

std::string strip_suffix(std::string s, const std::string &suffix)
{
    if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
        s.resize(s.size() - suffix.size());
    }
    return s;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

int exit_code_for(const Error &e)
{
    if (dynamic_cast<const ParseError *>(&e) || dynamic_cast<const UnsupportedRange *>(&e)) {
        return kExitInput;
    }
    if (dynamic_cast<const NumericalBreakdown *>(&e) || dynamic_cast<const VerificationFailure *>(&e)) {
        return kExitVerification;
    }
    return kExitPrecondition;
}

Matrix load_unitary(const std::string &path)
{
    Matrix u = parse_matrix_json(read_file(path));
    if (u.rows() > (Eigen::Index{1} << kMaxQubits)) {
        throw WidthExceeded("matrices are limited to 12 qubits");
    }
    log2_dim(u.rows());
    require_unitary(u, "input");
    return u;
}

// Expected lowered counts of a synthesis route on n qubits.
std::pair<MethodCounts, std::string> expected_counts(const std::string &method, int n)
{
    if (n == 1) {
        return {{3, 0}, "single-qubit"};
    }
    if (method == "sdm") {
        return {table1_counts(Method::SDM, n), "table1.SDM"};
    }
    if (method == "flag-nb1") {
        return {table1_counts(Method::CSD04B, n), "table1.CSD04B"};
    }
    return {table1_counts(Method::FlagDecomp, n), "table1.FlagDecomp"};
}

struct SynthOpts {
    std::string input;
    std::string method = "sdm";
    bool skeleton = false;
    std::string out;
    double tol = 1e-9;
};

int cmd_synth(const SynthOpts &o, std::ostream &out)
{
    const Matrix u = load_unitary(o.input);
    const int n = log2_dim(u.rows());
    Circuit c;
    if (o.method == "sdm") {
        if (o.skeleton) {
            throw InvalidArgument("--skeleton applies to the flag methods only");
        }
        c = sdm(u);
    }
    else {
        c = flag_synthesize(u, o.method == "flag" ? 2 : 1, !o.skeleton);
    }
    const double residual = frob_dist(to_matrix(c), u);
    const ResourceCount rc = count(c);
    AuditReport a;
    if (o.skeleton) {
        a = AuditReport{"parameters", {{"rotations", (1LL << (2 * n)) - 1, rc.rotations}}};
    }
    else {
        const auto [exp, id] = expected_counts(o.method, n);
        a = audit(c, exp.rotations, exp.cnots, id);
    }
    const bool ok = residual <= o.tol && a.pass();
    out << "rotations=" << rc.rotations << " cnots=" << rc.two_qubit_cliffords
        << " global_phases=" << rc.global_phases << " residual=" << fmt(residual)
        << " audit=" << (a.pass() ? "PASS" : "FAIL") << "\n"
        << a.str() << "\n";
    if (!ok) {
        throw VerificationFailure("reconstruction residual " + fmt(residual) + " or audit failed");
    }
    const std::string prefix = strip_suffix(o.out.empty() ? strip_suffix(o.input, ".mat.json") : o.out,
                                            ".circuit.json");
    write_file(prefix + ".circuit.json", emit_json(c));
    if (!o.skeleton) {
        write_file(prefix + ".qasm", emit_qasm(c));
    }
    return kExitOk;
}

int cmd_verify(const std::string &circ, const std::string &mat, double tol, std::ostream &out)
{
    const Circuit c = parse_json(read_file(circ));
    const Matrix u = parse_matrix_json(read_file(mat));
    if (c.width > kMaxQubits) {
        throw WidthExceeded("verification is limited to 12 qubits");
    }
    if (u.rows() != (Eigen::Index{1} << c.width)) {
        throw InvalidArgument("matrix dimension does not match the circuit width");
    }
    const double residual = frob_dist(to_matrix(c), u);
    out << "residual=" << fmt(residual) << " tol=" << fmt(tol) << "\n";
    if (!(residual <= tol)) {
        throw VerificationFailure("residual above tolerance");
    }
    return kExitOk;
}

int cmd_counts(int table, int n, int k, int length, std::ostream &out)
{
    if (n < 1) {
        throw UnsupportedRange("n must be >= 1");
    }
    std::ostringstream js;
    char buf[160];
    if (table == 1) {
        std::snprintf(buf, sizeof buf, "%-12s %14s %14s\n", "method", "rotations", "cnots");
        out << buf;
        js << "[";
        bool first = true;
        for (Method m : all_methods()) {
            std::string r = "n/a", cn = "n/a";
            try {
                const MethodCounts c = table1_counts(m, n);
                r = std::to_string(c.rotations);
                cn = std::to_string(c.cnots);
                js << (first ? "" : ", ") << "{\"method\": \"" << method_name(m)
                   << "\", \"rotations\": " << c.rotations << ", \"cnots\": " << c.cnots << "}";
                first = false;
            }
            catch (const UnsupportedRange &) {
            }
            std::snprintf(buf, sizeof buf, "%-12s %14s %14s\n", method_name(m).c_str(), r.c_str(),
                          cn.c_str());
            out << buf;
        }
        js << "]";
    }
    else if (table == 2) {
        std::snprintf(buf, sizeof buf, "%-20s %14s %14s %6s\n", "subroutine", "rotations",
                      "cliffords", "delta");
        out << buf;
        js << "[";
        bool first = true;
        for (Subroutine s : all_subroutines()) {
            std::string r = "n/a", cl = "n/a", d = "-";
            try {
                const SubroutineCounts c =
                    table2_counts(s, n, s == Subroutine::MpsPrep ? length : k);
                r = std::to_string(c.rotations);
                cl = std::to_string(c.cliffords);
                d = std::to_string(c.delta);
                js << (first ? "" : ", ") << "{\"subroutine\": \"" << subroutine_name(s)
                   << "\", \"rotations\": " << c.rotations << ", \"cliffords\": " << c.cliffords
                   << ", \"delta\": " << c.delta << "}";
                first = false;
            }
            catch (const UnsupportedRange &) {
            }
            std::snprintf(buf, sizeof buf, "%-20s %14s %14s %6s\n", subroutine_name(s).c_str(),
                          r.c_str(), cl.c_str(), d.c_str());
            out << buf;
        }
        js << "]";
    }
    else {
        throw UnsupportedRange("table must be 1 or 2");
    }
    out << js.str() << "\n";
    return kExitOk;
}

struct EstimateOpts {
    int n = 2;
    long long b = 16;
    long long aux = 0;
    long long lambda = 0;
    long long lambda_prime = 0;
    bool mps = false;
    bool json = false;
};

int cmd_estimate(const EstimateOpts &o, std::ostream &out)
{
    const int m = o.mps ? o.n + 1 : o.n;
    auto [lam, lamp] = choose_lambda(m, o.b, o.aux);
    CostParams p;
    p.n = o.n;
    p.b = o.b;
    p.aux_qubits = o.aux;
    p.lambda = o.lambda > 0 ? o.lambda : lam;
    p.lambda_prime = o.lambda_prime > 0 ? o.lambda_prime : lamp;
    const ResourceReport r = o.mps ? mps_toffoli(p) : toffoli_totals(p);
    out << (o.mps ? "per-isometry Toffoli estimate\n" : "unitary Toffoli estimate\n");
    out << "lambda chosen from min(ceil(sqrt(2^" << m << "/b)), floor(aux/b)) with aux=" << o.aux
        << (o.lambda > 0 ? " (overridden)" : "") << "\n";
    out << r.text();
    if (o.json) {
        out << r.json() << "\n";
    }
    return kExitOk;
}

struct MpsOpts {
    std::string action;
    std::string input;
    std::string target = "clifford-rot";
    long long chi = 0;
    std::string circuit;
    std::string out;
};

int cmd_mps(const MpsOpts &o, std::ostream &out)
{
    const MPS raw = parse_mps_json(read_file(o.input));
    const MPS mps = left_canonicalize(raw);
    const CVector psi = mps_statevector(mps);
    CVector zero = CVector::Zero(psi.size());
    zero(0) = 1.0;
    const bool skel = o.target == "skeleton";
    if (o.action == "verify" && !o.circuit.empty()) {
        const Circuit c = parse_json(read_file(o.circuit));
        if (c.width != mps.length()) {
            throw InvalidArgument("circuit width does not match the MPS length");
        }
        const double f = state_fidelity(psi, simulate(c, zero));
        out << "fidelity=" << std::setprecision(17) << f << "\n";
        if (!(f >= 1.0 - kFidelityTol)) {
            throw VerificationFailure("fidelity below 1 - 1e-9");
        }
        return kExitOk;
    }
    const MpsSynthesis s = skel ? mps_synthesize_skeleton(mps, o.chi) : mps_synthesize_clifford_rot(mps, o.chi);
    const double f = state_fidelity(psi, simulate(s.circuit, zero));
    const int n = s.bond_qubits;
    bool audit_ok = true;
    std::ostringstream rep;
    for (std::size_t t = 0; t < s.sites.size(); ++t) {
        if (skel) {
            const long long flags = count_kind(s.sites[t], GateKind::MuxFlag);
            const long long want = (1LL << n) - 1 + (t == 0 ? (1LL << n) - 1 : 0);
            audit_ok = audit_ok && flags == want;
            rep << "site " << t << ": mux_flags=" << flags << "\n";
        }
        else {
            // Two symmetrised multiplexers plus two n-qubit flags.
            const long long flag = n == 1 ? 0 : n == 2 ? 2 : flag_cnots_appendix(n).to_integer();
            const AuditReport a = audit(s.sites[t], 2LL << (2 * n), 2 * ((1LL << n) - 1) + 2 * flag,
                                        "mps.site");
            audit_ok = audit_ok && a.pass();
            rep << "site " << t << ": " << a.str() << "\n";
        }
    }
    out << rep.str() << "fidelity=" << std::setprecision(17) << f << " audit=" << (audit_ok ? "PASS" : "FAIL")
        << "\n";
    if (!(f >= 1.0 - kFidelityTol) || !audit_ok) {
        throw VerificationFailure("MPS preparation check failed");
    }
    if (o.action == "synth") {
        const std::string prefix =
            strip_suffix(o.out.empty() ? strip_suffix(o.input, ".mps.json") : o.out, ".circuit.json");
        write_file(prefix + ".circuit.json", emit_json(s.circuit));
        if (!skel) {
            write_file(prefix + ".qasm", emit_qasm(s.circuit));
        }
    }
    return kExitOk;
}

struct RandomOpts {
    int n = 2;
    std::uint64_t seed = 0;
    std::string out;
    int mps_length = 0;
    long long chi = 2;
};

int cmd_random(const RandomOpts &o, std::ostream &out)
{
    std::mt19937_64 rng(o.seed);
    if (o.mps_length > 0) {
        if (o.mps_length > 20 || o.chi < 1 || o.chi > 16) {
            throw UnsupportedRange("random MPS needs L <= 20 and 1 <= chi <= 16");
        }
        write_file(o.out, emit_mps_json(random_mps(o.mps_length, o.chi, rng)));
    }
    else {
        if (o.n < 1 || o.n > kMaxQubits) {
            throw UnsupportedRange("--n must be in [1, 12]");
        }
        write_file(o.out, emit_matrix_json(haar_unitary(Eigen::Index{1} << o.n, rng)));
    }
    out << "wrote " << o.out << "\n";
    return kExitOk;
}

} // namespace

Matrix parse_matrix_json(const std::string &text)
{
    using namespace detail;
    const json doc = parse_document(text);
    if (!doc.is_object()) {
        fail("document", "expected an object");
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1 ||
        doc["dim"].get<long long>() > 4096) {
        fail("dim", "expected an integer in [1, 4096]");
    }
    const auto dim = doc["dim"].get<Eigen::Index>();
    if (!doc.contains("data") || !doc["data"].is_array() ||
        doc["data"].size() != static_cast<std::size_t>(dim * dim)) {
        fail("data", "expected dim*dim [re, im] pairs");
    }
    Matrix m(dim, dim);
    const json &d = doc["data"];
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto idx = static_cast<std::size_t>(i * dim + j);
            m(i, j) = as_cplx(d[idx], "data[" + std::to_string(idx) + "]");
        }
    }
    return m;
}

std::string emit_matrix_json(const Matrix &m)
{
    using namespace detail;
    std::string s = "{\"dim\": " + std::to_string(m.rows()) + ", \"data\": [";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            s += (i || j) ? ", " : "";
            s += fmt_cplx(m(i, j));
        }
    }
    s += "]}\n";
    return s;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"flagc: parameter-optimal unitary and MPS synthesis"};
    app.require_subcommand(1);

    SynthOpts so;
    auto *synth = app.add_subcommand("synth", "synthesise a unitary from a .mat.json file");
    synth->add_option("input", so.input, "matrix file")->required();
    synth->add_option("--method", so.method, "flag, flag-nb1 or sdm")
        ->check(CLI::IsMember({"flag", "flag-nb1", "sdm"}));
    synth->add_flag("--skeleton", so.skeleton, "keep multiplexed flags unlowered");
    synth->add_option("--out", so.out, "output prefix");
    synth->add_option("--tol", so.tol, "reconstruction tolerance");

    std::string vcirc, vmat;
    double vtol = 1e-9;
    auto *verify = app.add_subcommand("verify", "compare a circuit with a matrix");
    verify->add_option("circuit", vcirc, "circuit file")->required();
    verify->add_option("matrix", vmat, "matrix file")->required();
    verify->add_option("--tol", vtol, "Frobenius tolerance");

    int table = 1, cn = 3, ck = 0, clen = 1;
    auto *counts = app.add_subcommand("counts", "print closed-form gate counts");
    counts->add_option("--table", table, "1 or 2");
    counts->add_option("--n", cn, "qubit count");
    counts->add_option("--k", ck, "multiplexing qubits");
    counts->add_option("--L", clen, "bulk sites for the MPS row");

    EstimateOpts eo;
    auto *estimate = app.add_subcommand("estimate", "Toffoli cost estimate");
    estimate->add_option("--n", eo.n, "qubit count")->required();
    estimate->add_option("--b", eo.b, "angle bits");
    estimate->add_option("--aux", eo.aux, "available auxiliary qubits");
    estimate->add_option("--lambda", eo.lambda, "QROM rows");
    estimate->add_option("--lambda-prime", eo.lambda_prime, "sign-QROM rows");
    estimate->add_flag("--mps", eo.mps, "per-isometry MPS estimate");
    estimate->add_flag("--json", eo.json, "also print JSON");

    MpsOpts mo;
    auto *mps = app.add_subcommand("mps", "MPS preparation");
    mps->add_option("action", mo.action, "synth or verify")
        ->required()
        ->check(CLI::IsMember({"synth", "verify"}));
    mps->add_option("input", mo.input, "MPS file")->required();
    mps->add_option("--target", mo.target, "clifford-rot or skeleton")
        ->check(CLI::IsMember({"clifford-rot", "skeleton"}));
    mps->add_option("--chi", mo.chi, "bond dimension (power of two)");
    mps->add_option("--circuit", mo.circuit, "circuit to verify against the MPS");
    mps->add_option("--out", mo.out, "output prefix");

    RandomOpts ro;
    auto *random = app.add_subcommand("random", "write a Haar-random unitary or random MPS");
    random->add_option("--n", ro.n, "qubit count");
    random->add_option("--seed", ro.seed, "mt19937_64 seed");
    random->add_option("--out", ro.out, "output file")->required();
    random->add_option("--mps-length", ro.mps_length, "write a random MPS with this many sites");
    random->add_option("--chi", ro.chi, "MPS bond dimension");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*synth) {
            return cmd_synth(so, out);
        }
        if (*verify) {
            return cmd_verify(vcirc, vmat, vtol, out);
        }
        if (*counts) {
            return cmd_counts(table, cn, ck, clen, out);
        }
        if (*estimate) {
            return cmd_estimate(eo, out);
        }
        if (*mps) {
            return cmd_mps(mo, out);
        }
        return cmd_random(ro, out);
    }
    catch (const Error &e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace flagsynth
