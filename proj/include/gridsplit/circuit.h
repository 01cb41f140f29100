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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridsplit {

using Amplitude = std::complex<double>;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Matrix2 = std::array<Amplitude, 4>;

/// r x q grid of qubits. Qubit k sits at (k / cols, k % cols); qubit 0 is top-left.
struct GridTopology {
    uint32_t rows = 0;
    uint32_t cols = 0;

    uint32_t num_qubits() const {
        return rows * cols;
    }
    uint32_t qubit_at(uint32_t row, uint32_t col) const {
        return row * cols + col;
    }
    uint32_t row_of(uint32_t qubit) const {
        return qubit / cols;
    }
    uint32_t col_of(uint32_t qubit) const {
        return qubit % cols;
    }
    /// Rows in the upper part of the horizontal mid-cut (ceil(rows / 2)).
    uint32_t upper_rows() const {
        return (rows + 1) / 2;
    }

    void validate() const;
    bool operator==(const GridTopology &) const = default;
};

enum class GateKind : uint8_t {
    Identity,
    H,
    SqrtX,
    SqrtY,
    T,
    PauliZ,
    Proj0,
    Proj1,
};

Matrix2 gate_matrix(GateKind kind);
bool is_diagonal(GateKind kind);
std::string_view gate_name(GateKind kind);

/// Unordered qubit pair carrying a CZ; stored with a < b.
struct Edge {
    uint32_t a = 0;
    uint32_t b = 0;

    Edge() = default;
    Edge(uint32_t x, uint32_t y) : a(x < y ? x : y), b(x < y ? y : x) {
    }
    bool operator==(const Edge &) const = default;
    auto operator<=>(const Edge &) const = default;
};

struct SingleGate {
    uint32_t qubit = 0;
    GateKind kind = GateKind::Identity;

    bool operator==(const SingleGate &) const = default;
};

/// One clock cycle. Qubits absent from both `singles` and `edges` are idle (Identity).
struct Layer {
    uint32_t index = 0;
    std::vector<SingleGate> singles;
    std::vector<Edge> edges;

    /// Throws std::invalid_argument if a qubit is used twice or is out of range.
    void validate(uint32_t num_qubits) const;
    bool operator==(const Layer &) const = default;
};

struct Circuit {
    GridTopology topology;
    std::vector<Layer> layers;
    std::optional<uint64_t> seed;

    uint32_t num_qubits() const {
        return topology.num_qubits();
    }
    uint32_t depth() const {
        return static_cast<uint32_t>(layers.size());
    }
    void validate() const;
    bool operator==(const Circuit &) const = default;
};

/// Position (1..8) of a layer within the repeating CZ cycle.
uint32_t cycle_position(uint32_t layer_index);

/// CZ edge set of the given layer under the fixed 8-position cycle.
///
/// Positions 1-6 only hold edges internal to the upper or lower half of the
/// horizontal mid-cut. Positions 7 and 8 hold the vertical edges crossing the
/// mid-cut, odd columns at 7 and even columns at 8. Over one period every grid
/// edge appears exactly once. Layer 1 is the Hadamard layer and has no edges.
std::vector<Edge> cz_pattern(const GridTopology &topology, uint32_t layer_index);

struct RandomCircuitSpec {
    GridTopology topology;
    uint32_t depth = 0;
    uint64_t seed = 0;
};

/// Universal random circuit. Layer 1 applies H everywhere; later layers take
/// their CZs from cz_pattern. A qubit that just left a CZ gets a single-qubit
/// gate: T if it has had none since the H layer, otherwise SqrtX, SqrtY or T
/// drawn from std::mt19937_64(seed), excluding its previous gate.
Circuit generate_random_circuit(const RandomCircuitSpec &spec);

struct GateCounts {
    uint64_t h = 0;
    uint64_t sqrt_x = 0;
    uint64_t sqrt_y = 0;
    uint64_t t = 0;
    uint64_t cz = 0;
    uint64_t pauli_z = 0;
    uint64_t proj0 = 0;
    uint64_t proj1 = 0;

    uint64_t total() const {
        return h + sqrt_x + sqrt_y + t + cz + pauli_z + proj0 + proj1;
    }
    bool operator==(const GateCounts &) const = default;
};

/// Identity placeholders are not counted.
GateCounts gate_counts(const Circuit &circuit);

}  // namespace gridsplit
