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

#include <iosfwd>
#include <string>

#include "linalg.hpp"

namespace flagsynth {

/// @brief Exit codes of the flagc tool.
enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitPrecondition = 3, kExitVerification = 4 };

/// @brief Parse a matrix document {dim, data: [[re, im], ...]} in row-major order.
Matrix parse_matrix_json(const std::string &text);

/// @brief Serialise a square matrix as a matrix document.
std::string emit_matrix_json(const Matrix &m);

/// @brief Run the flagc command line; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace flagsynth
