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

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "flagsynth/linalg.hpp"

namespace flagsynth::detail {

using nlohmann::json;

inline std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_cplx(Cplx z)
{
    return "[" + fmt_double(z.real()) + ", " + fmt_double(z.imag()) + "]";
}

[[noreturn]] inline void fail(const std::string &where, const std::string &msg)
{
    throw ParseError(where + ": " + msg);
}

inline json parse_document(const std::string &text)
{
    try {
        return json::parse(text);
    }
    catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " +
                         e.what());
    }
}

inline double as_double(const json &v, const std::string &where)
{
    if (!v.is_number()) {
        fail(where, "expected a number");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
        fail(where, "non-finite value");
    }
    return d;
}

inline Cplx as_cplx(const json &v, const std::string &where)
{
    if (!v.is_array() || v.size() != 2) {
        fail(where, "expected [re, im]");
    }
    return {as_double(v[0], where + "[0]"), as_double(v[1], where + "[1]")};
}

inline void require_version(const json &doc)
{
    if (!doc.is_object()) {
        fail("document", "expected an object");
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"] != 1) {
        fail("version", "expected version 1");
    }
}

} // namespace flagsynth::detail
