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

#include "flagsynth/resources.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "flagsynth/sdm.hpp"

namespace flagsynth {

namespace {

constexpr int kMaxN = 30;

long long p2(int e) { return 1LL << e; }
long long p4(int e) { return 1LL << (2 * e); }

long long exact_div(long long num, long long den)
{
    if (num % den != 0) {
        throw std::logic_error("formula evaluated to a non-integer");
    }
    return num / den;
}

void require_range(bool ok, const std::string &what)
{
    if (!ok) {
        throw UnsupportedRange(what);
    }
}

bool is_pow2(long long v) { return v >= 1 && (v & (v - 1)) == 0; }

long long nearest_pow2(long long x)
{
    if (x <= 1) {
        return 1;
    }
    long long lo = 1;
    while (lo * 2 <= x) {
        lo *= 2;
    }
    const long long hi = lo * 2;
    return (x - lo <= hi - x) ? lo : hi;
}

long long ceil_sqrt_ratio(long long num, long long den)
{
    // Smallest c with c^2 * den >= num.
    long long c = static_cast<long long>(std::sqrt(static_cast<double>(num) / den));
    while (c > 0 && (c - 1) * (c - 1) * den >= num) {
        --c;
    }
    while (c * c * den < num) {
        ++c;
    }
    return c;
}

std::string clamp_str(Rational v)
{
    return v < Rational(0) ? std::string("0") : v.str();
}

void warn_if_invalid(ResourceReport &r)
{
    auto check = [&](const std::string &id, Rational v) {
        if (v < Rational(0)) {
            r.warnings.push_back(id + " is negative (" + v.str() +
                                 "); the formulas target fault-tolerant scale, shown as 0");
        }
        else if (!v.is_integer()) {
            r.warnings.push_back(id + " is fractional (" + v.str() + "); lambda exceeds the table size");
        }
    };
    for (const ReportLine &l : r.blocks) {
        check(l.id, l.value);
    }
    check("ours", r.ours);
    check("baseline", r.baseline);
}

} // namespace

Rational::Rational(long long n, long long d) : num(n), den(d)
{
    if (d == 0) {
        throw std::domain_error("zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

long long Rational::to_integer() const
{
    if (den != 1) {
        throw std::logic_error("rational " + str() + " is not an integer");
    }
    return num;
}

std::string Rational::str() const
{
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }

std::string method_name(Method m)
{
    switch (m) {
    case Method::QR: return "QR";
    case Method::CSD99: return "CSD99";
    case Method::QSD15: return "QSD15";
    case Method::QSD25: return "QSD25";
    case Method::QSD24: return "QSD24";
    case Method::CSD04M: return "CSD04M";
    case Method::CSD04B: return "CSD04B";
    case Method::FlagDecomp: return "FlagDecomp";
    case Method::SDM: return "SDM";
    case Method::BWC: return "BWC";
    case Method::Optimum: return "Optimum";
    }
    return "?";
}

const std::vector<Method> &all_methods()
{
    static const std::vector<Method> v = {Method::QR,     Method::CSD99,  Method::QSD15,
                                          Method::QSD25,  Method::QSD24,  Method::CSD04M,
                                          Method::CSD04B, Method::FlagDecomp, Method::SDM,
                                          Method::BWC,    Method::Optimum};
    return v;
}

MethodCounts table1_counts(Method m, int n)
{
    require_range(n >= 1 && n <= kMaxN, "table 1 rows need 1 <= n <= 30");
    const long long a = p4(n), t = p2(n);
    switch (m) {
    case Method::QR:
        // Tabulated as approximate bounds; rounded to the nearest integer.
        return {25 * a, (87 * a + 5) / 10};
    case Method::CSD99:
        return {exact_div(3 * a - t, 2), exact_div(n * a - t, 2)};
    case Method::QSD15:
        return {exact_div(3 * a - 3 * t, 2), exact_div(3 * a - 6 * t, 4)};
    case Method::QSD25:
        require_range(n >= 2, "QSD25 row needs n >= 2");
        return {exact_div(21 * a - 24 * t, 16), exact_div(9 * a - 24 * t, 16)};
    case Method::QSD24:
        require_range(n >= 2, "QSD24 row needs n >= 2");
        return {exact_div(5 * a - 6 * t + 4, 4), exact_div(22 * a - 72 * t + 80, 48)};
    case Method::CSD04M:
        return {a - 1, a - 2 * t};
    case Method::CSD04B:
        return {a - 1, exact_div(a - t - 2, 2)};
    case Method::FlagDecomp:
        require_range(n >= 2, "flag-decomp row needs n >= 2");
        return {a - 1, exact_div(2 * a - 3 * t - 4, 4)};
    case Method::SDM:
        require_range(n >= 2, "SDM row needs n >= 2");
        return {a - 1, exact_div(4 * a - 3 * (n + 2) * t + 8 * (n - 1), 8)};
    case Method::BWC:
    case Method::Optimum: {
        const long long num = a - 3 * n + 1;
        return {a - 1, (num + 3) / 4};
    }
    }
    throw UnsupportedRange("unknown method");
}

std::string subroutine_name(Subroutine s)
{
    switch (s) {
    case Subroutine::OneQFlag: return "1Q-flag";
    case Subroutine::TwoQFlag: return "2Q-flag";
    case Subroutine::MuxRot: return "mux_k-Rot";
    case Subroutine::SymMuxRot: return "sym-mux_k-Rot";
    case Subroutine::MuxOneQFlag: return "mux_k-1Q-flag";
    case Subroutine::MuxTwoQFlag: return "mux_k-2Q-flag";
    case Subroutine::NQFlagBergholm: return "nQ-flag (Bergholm)";
    case Subroutine::NQFlagMinimal: return "nQ-flag (minimal)";
    case Subroutine::MuxNQFlag: return "mux_k-nQ-flag";
    case Subroutine::Diagonal: return "n-qubit diagonal";
    case Subroutine::NQUnitary: return "n-qubit unitary";
    case Subroutine::MpsPrep: return "MPS prep";
    }
    return "?";
}

const std::vector<Subroutine> &all_subroutines()
{
    static const std::vector<Subroutine> v = {
        Subroutine::OneQFlag,       Subroutine::TwoQFlag,      Subroutine::MuxRot,
        Subroutine::SymMuxRot,      Subroutine::MuxOneQFlag,   Subroutine::MuxTwoQFlag,
        Subroutine::NQFlagBergholm, Subroutine::NQFlagMinimal, Subroutine::MuxNQFlag,
        Subroutine::Diagonal,       Subroutine::NQUnitary,     Subroutine::MpsPrep};
    return v;
}

SubroutineCounts table2_counts(Subroutine s, int n, int k)
{
    require_range(n >= 0 && n <= kMaxN / 2 && k >= 0 && k <= kMaxN, "n or k out of range");
    const long long a = p4(n), t = p2(n), m = p2(k);
    switch (s) {
    case Subroutine::OneQFlag:
        return {2, 0, 0};
    case Subroutine::TwoQFlag:
        return {12, 2, 0};
    case Subroutine::MuxRot:
        require_range(k >= 1, "mux_k-Rot needs k >= 1");
        return {m, m, 0};
    case Subroutine::SymMuxRot:
        return {m, m - 1, 0};
    case Subroutine::MuxOneQFlag:
        return {2 * m, m - 1, 1};
    case Subroutine::MuxTwoQFlag:
        return {3 * 4 * m, 6 * m - 4, 1};
    case Subroutine::NQFlagBergholm:
        require_range(n >= 1, "nQ-flag needs n >= 1");
        return {a - t, exact_div(a - 3 * t + 2, 2), 1};
    case Subroutine::NQFlagMinimal:
        require_range(n >= 3, "minimal nQ-flag needs n >= 3");
        return {a - t, exact_div(4 * a - (n + 12) * t + 8, 8), 1};
    case Subroutine::MuxNQFlag:
        require_range(n >= 2 && k >= 1, "mux_k-nQ-flag needs n >= 2 and k >= 1");
        return {(a - t) * m, exact_div(2 * (a - t) * m - 5 * t + 4, 4), 1};
    case Subroutine::Diagonal:
        require_range(n >= 1, "diagonal needs n >= 1");
        return {t - 1, t - 2, 0};
    case Subroutine::NQUnitary: {
        require_range(n >= 2, "n-qubit unitary needs n >= 2");
        const MethodCounts c = table1_counts(Method::SDM, n);
        return {c.rotations, c.cnots, 0};
    }
    case Subroutine::MpsPrep: {
        require_range(n >= 2 && k >= 1, "MPS prep needs n >= 2 and L >= 1");
        const long long l = k;
        const long long cl = exact_div(4 * (2 * l + 1) * a - ((2 * l + 3) * n + 8 * l + 6) * t +
                                           8 * (n - 1),
                                       8);
        return {(2 * l + 1) * a, cl, 0};
    }
    }
    throw UnsupportedRange("unknown subroutine");
}

Rational flag_cnots_appendix(int n)
{
    return Rational(p4(n), 2) - Rational((n + 12) * p2(n), 8) + 1;
}

Rational flag_cnots_main_text(int n)
{
    return Rational(p4(n), 2) - Rational((n + 6) * p2(n), 4) + 1;
}

DiscrepancyEntry flag_cost_discrepancy(int n, std::uint64_t seed)
{
    require_range(n >= 2 && n <= 8, "discrepancy audit needs 2 <= n <= 8");
    std::mt19937_64 rng(seed);
    std::vector<int> q(n);
    std::iota(q.begin(), q.end(), 0);
    const FlagFactorization f = rec_flag_dec(haar_unitary(p2(n), rng), q);
    DiscrepancyEntry e;
    e.n = n;
    e.counted = count(f.flag).two_qubit_cliffords;
    e.appendix = flag_cnots_appendix(n);
    e.main_text = flag_cnots_main_text(n);
    return e;
}

bool AuditReport::pass() const
{
    return std::all_of(entries.begin(), entries.end(), [](const AuditEntry &e) { return e.match(); });
}

std::string AuditReport::str() const
{
    std::ostringstream os;
    os << "audit " << formula_id << ": " << (pass() ? "PASS" : "FAIL");
    for (const AuditEntry &e : entries) {
        os << " " << e.category << "=" << e.actual;
        if (!e.match()) {
            os << " (expected " << e.expected << ", delta " << e.actual - e.expected << ")";
        }
    }
    return os.str();
}

AuditReport audit(const Circuit &c, long long rotations, long long cliffords,
                  const std::string &formula_id)
{
    const ResourceCount rc = count(c);
    return {formula_id,
            {{"rotations", rotations, rc.rotations}, {"cnots", cliffords, rc.two_qubit_cliffords}}};
}

void validate(const CostParams &p)
{
    if (p.n < 1 || p.n > kMaxN) {
        throw InvalidArgument("n must be in [1, 30]");
    }
    if (p.b < 1) {
        throw InvalidArgument("b must be >= 1");
    }
    if (!is_pow2(p.lambda) || !is_pow2(p.lambda_prime)) {
        throw InvalidArgument("lambda and lambda' must be powers of two");
    }
}

Rational toffoli_qrom(Rational entries, long long lambda, long long bits)
{
    return entries / lambda + Rational((lambda - 1) * bits) - 1;
}

Rational toffoli_adder(long long b) { return Rational(b - 2); }

Rational toffoli_sign_block(int n, long long lambda_prime)
{
    return Rational(p2(n), lambda_prime) + lambda_prime - 2;
}

Rational toffoli_incrementers(int n) { return Rational((n - 2) * (p2(n) - 1)); }

Rational toffoli_mux_flag(const CostParams &p)
{
    validate(p);
    return Rational(p2(p.n), 2 * p.lambda) + 2 * p.lambda * p.b - 5;
}

Rational toffoli_diagonal(const CostParams &p)
{
    validate(p);
    return Rational(p2(p.n), 2 * p.lambda) + 2 * p.lambda * p.b + Rational(p2(p.n), p.lambda_prime) +
           p.lambda_prime - 5;
}

Rational toffoli_controlled_rotation(const CostParams &p)
{
    validate(p);
    return Rational(p2(p.n), 2 * p.lambda) + p.lambda * p.b - 2;
}

ResourceReport toffoli_totals(const CostParams &p)
{
    validate(p);
    require_range(p.n >= 2, "Toffoli totals need n >= 2");
    ResourceReport r;
    r.params = p;
    const Rational mf = toffoli_mux_flag(p);
    const Rational dg = toffoli_diagonal(p);
    const Rational inc = toffoli_incrementers(p.n);
    r.blocks = {{"mux_flag.qrom", toffoli_qrom(p2(p.n - 1), p.lambda, 2 * p.b)},
                {"mux_flag.adders", 2 * toffoli_adder(p.b)},
                {"mux_flag", mf},
                {"diagonal.qrom", toffoli_qrom(p2(p.n), 2 * p.lambda, p.b)},
                {"diagonal.adder", toffoli_adder(p.b)},
                {"diagonal.sign", toffoli_sign_block(p.n, p.lambda_prime)},
                {"diagonal", dg},
                {"incrementers", inc}};
    r.ours = Rational(p2(p.n) - 1) * mf + dg;
    r.baseline = Rational(p2(p.n)) * mf + dg + inc;
    r.savings = r.baseline - r.ours;
    warn_if_invalid(r);
    return r;
}

ResourceReport mps_toffoli(const CostParams &p)
{
    validate(p);
    ResourceReport r;
    r.params = p;
    CostParams q = p;
    q.n = p.n + 1;
    const Rational mf = toffoli_mux_flag(q);
    const Rational dg = toffoli_diagonal(q);
    const Rational inc = toffoli_incrementers(p.n);
    const Rational cr = toffoli_controlled_rotation(q);
    r.blocks = {{"flag_multiplexer", mf},
                {"flag_multiplexers", Rational(p2(p.n)) * mf},
                {"baseline.final_diagonal", dg},
                {"baseline.incrementers", inc},
                {"baseline.controlled_rotation", cr}};
    r.ours = Rational(p2(p.n)) * mf;
    r.baseline = r.ours + dg + inc + cr;
    r.savings = r.baseline - r.ours;
    warn_if_invalid(r);
    return r;
}

std::pair<long long, long long> choose_lambda(int m, long long b, long long aux_qubits)
{
    if (m < 1 || m > kMaxN || b < 1 || aux_qubits < 0) {
        throw InvalidArgument("choose_lambda needs 1 <= m <= 30, b >= 1, aux >= 0");
    }
    auto pick = [&](long long bits) {
        const long long x = std::min(ceil_sqrt_ratio(p2(m), bits), aux_qubits / bits);
        return nearest_pow2(x);
    };
    return {pick(b), pick(1)};
}

std::string ResourceReport::text() const
{
    std::ostringstream os;
    os << "n=" << params.n << " b=" << params.b << " lambda=" << params.lambda
       << " lambda'=" << params.lambda_prime << "\n";
    std::size_t w = 8;
    for (const ReportLine &l : blocks) {
        w = std::max(w, l.id.size());
    }
    auto row = [&](const std::string &id, Rational v) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-*s %12s\n", static_cast<int>(w), id.c_str(),
                      clamp_str(v).c_str());
        os << buf;
    };
    for (const ReportLine &l : blocks) {
        row(l.id, l.value);
    }
    row("ours", ours);
    row("baseline", baseline);
    row("savings", savings);
    for (const std::string &s : warnings) {
        os << "  warning: " << s << "\n";
    }
    return os.str();
}

std::string ResourceReport::json() const
{
    auto q = [](const std::string &s) { return "\"" + s + "\""; };
    auto v = [&](Rational r) { return r.is_integer() ? r.str() : q(r.str()); };
    std::ostringstream os;
    os << "{\"n\": " << params.n << ", \"b\": " << params.b << ", \"lambda\": " << params.lambda
       << ", \"lambda_prime\": " << params.lambda_prime << ", \"blocks\": {";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        os << (i ? ", " : "") << q(blocks[i].id) << ": " << v(blocks[i].value);
    }
    os << "}, \"ours\": " << v(ours) << ", \"baseline\": " << v(baseline)
       << ", \"savings\": " << v(savings) << ", \"warnings\": [";
    for (std::size_t i = 0; i < warnings.size(); ++i) {
        os << (i ? ", " : "") << q(warnings[i]);
    }
    os << "]}";
    return os.str();
}

} // namespace flagsynth
