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

#include <stdexcept>
#include <string>

namespace flagsynth {

/**
 * @brief Numerical tolerances shared by all modules.
 */
struct Tolerances {
    double unitarity = 1e-10;
    double reconstruction = 1e-9;
    double kernel = 1e-12;
    double csd_cluster = 1e-4;
    double csd_breakdown = 1e-8;
    double degenerate = 1e-12;
};

/// @brief Process-wide tolerance record (read-only).
inline constexpr Tolerances kTol{};

/// @brief Base class of all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define FLAGSYNTH_ERROR(Name)                                                                      \
    class Name : public Error {                                                                    \
      public:                                                                                      \
        explicit Name(const std::string &msg) : Error(std::string(#Name ": ") + msg) {}            \
    }

FLAGSYNTH_ERROR(NonUnitaryInput);
FLAGSYNTH_ERROR(NumericalBreakdown);
FLAGSYNTH_ERROR(NotSymmetric);
FLAGSYNTH_ERROR(WidthExceeded);
FLAGSYNTH_ERROR(ParseError);
FLAGSYNTH_ERROR(NotLowered);
FLAGSYNTH_ERROR(IncompatibleEntangler);
FLAGSYNTH_ERROR(InvalidArgument);
FLAGSYNTH_ERROR(ChiTooSmall);
FLAGSYNTH_ERROR(NotIsometry);
FLAGSYNTH_ERROR(SizeExceeded);
FLAGSYNTH_ERROR(UnsupportedRange);

#undef FLAGSYNTH_ERROR

} // namespace flagsynth
