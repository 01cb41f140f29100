// Copyright 2026 The gridsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gridsplit/circuit.h"

namespace gridsplit {

/// Malformed circuit document. `line` and `column` are 1-based; 0 when unknown.
struct CircuitParseError : std::runtime_error {
    size_t line;
    size_t column;
    CircuitParseError(const std::string &what, size_t line, size_t column)
        : std::runtime_error(what), line(line), column(column) {
    }
};

/// Parses the JSON circuit document:
///
///   {"rows": R, "cols": Q, "seed": S,
///    "layers": [{"singles": [[qubit, "H"|"SX"|"SY"|"T"], ...], "cz": [[a, b], ...]}, ...]}
///
/// `seed` is optional. Layer indices are implied by position (1-based).
/// Throws CircuitParseError for syntax or schema problems and
/// std::invalid_argument when a layer breaks the one-gate-per-qubit rule.
Circuit parse_circuit(std::string_view text);

/// Deterministic output: one layer per line, singles sorted by qubit, CZs sorted.
/// Only H, SX, SY and T singles can be written; Identity is omitted.
std::string serialize_circuit(const Circuit &circuit);

Circuit read_circuit_file(const std::string &path);
void write_circuit_file(const std::string &path, const Circuit &circuit);

}  // namespace gridsplit
