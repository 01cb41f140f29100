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

#include "gridsplit/circuit.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gridsplit {

void GridTopology::validate() const {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("grid topology needs rows >= 1 and cols >= 1");
    }
    if (uint64_t{rows} * cols > 1024) {
        throw std::invalid_argument("grid topology has more than 1024 qubits");
    }
}

Matrix2 gate_matrix(GateKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    const Amplitude i{0, 1};
    switch (kind) {
        case GateKind::Identity:
            return {1, 0, 0, 1};
        case GateKind::H:
            return {s, s, s, -s};
        case GateKind::SqrtX:
            return {0.5 * (1.0 + i), 0.5 * (1.0 - i), 0.5 * (1.0 - i), 0.5 * (1.0 + i)};
        case GateKind::SqrtY:
            return {0.5 * (1.0 + i), -0.5 * (1.0 + i), 0.5 * (1.0 + i), 0.5 * (1.0 + i)};
        case GateKind::T:
            return {1, 0, 0, Amplitude{s, s}};
        case GateKind::PauliZ:
            return {1, 0, 0, -1};
        case GateKind::Proj0:
            return {1, 0, 0, 0};
        case GateKind::Proj1:
            return {0, 0, 0, 1};
    }
    throw std::invalid_argument("unknown gate kind");
}

bool is_diagonal(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::SqrtX:
        case GateKind::SqrtY:
            return false;
        default:
            return true;
    }
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::Identity:
            return "I";
        case GateKind::H:
            return "H";
        case GateKind::SqrtX:
            return "SX";
        case GateKind::SqrtY:
            return "SY";
        case GateKind::T:
            return "T";
        case GateKind::PauliZ:
            return "Z";
        case GateKind::Proj0:
            return "P0";
        case GateKind::Proj1:
            return "P1";
    }
    return "?";
}

void Layer::validate(uint32_t num_qubits) const {
    std::vector<bool> used(num_qubits, false);
    auto claim = [&](uint32_t q) {
        if (q >= num_qubits) {
            throw std::invalid_argument(
                "layer " + std::to_string(index) + ": qubit " + std::to_string(q) + " out of range");
        }
        if (used[q]) {
            throw std::invalid_argument(
                "layer " + std::to_string(index) + ": qubit " + std::to_string(q) +
                " appears in more than one gate (a qubit may carry at most one gate per layer)");
        }
        used[q] = true;
    };
    for (const auto &e : edges) {
        if (e.a == e.b) {
            throw std::invalid_argument("layer " + std::to_string(index) + ": CZ on a single qubit");
        }
        claim(e.a);
        claim(e.b);
    }
    for (const auto &g : singles) {
        claim(g.qubit);
    }
}

void Circuit::validate() const {
    topology.validate();
    for (size_t k = 0; k < layers.size(); k++) {
        if (layers[k].index != k + 1) {
            throw std::invalid_argument("layer indices must be consecutive starting at 1");
        }
        layers[k].validate(num_qubits());
    }
}

uint32_t cycle_position(uint32_t layer_index) {
    if (layer_index < 1) {
        throw std::invalid_argument("layer index must be >= 1");
    }
    return (layer_index - 1) % 8 + 1;
}

namespace {

// Horizontal edges (row, col)-(row, col+1) with col % 2 == col_parity and row % 2 == row_parity.
void horizontal_group(const GridTopology &g, uint32_t col_parity, uint32_t row_parity, std::vector<Edge> &out) {
    for (uint32_t r = row_parity; r < g.rows; r += 2) {
        for (uint32_t c = col_parity; c + 1 < g.cols; c += 2) {
            out.emplace_back(g.qubit_at(r, c), g.qubit_at(r, c + 1));
        }
    }
}

}  // namespace

std::vector<Edge> cz_pattern(const GridTopology &topology, uint32_t layer_index) {
    uint32_t pos = cycle_position(layer_index);
    std::vector<Edge> out;
    if (layer_index == 1 || topology.rows == 0 || topology.cols == 0) {
        return out;
    }
    // Vertical edges (row, col)-(row+1, col) are grouped by the parity of `row`
    // relative to the mid-cut boundary row.
    const uint32_t boundary = topology.upper_rows() - 1;
    const uint32_t boundary_parity = boundary % 2;
    auto vertical = [&](auto keep_row, auto keep_col) {
        for (uint32_t r = 0; r + 1 < topology.rows; r++) {
            if (!keep_row(r)) {
                continue;
            }
            for (uint32_t c = 0; c < topology.cols; c++) {
                if (keep_col(c)) {
                    out.emplace_back(topology.qubit_at(r, c), topology.qubit_at(r + 1, c));
                }
            }
        }
    };
    auto any_col = [](uint32_t) {
        return true;
    };
    switch (pos) {
        case 1:
            vertical([&](uint32_t r) { return r % 2 == boundary_parity && r != boundary; }, any_col);
            break;
        case 2:
            horizontal_group(topology, 0, 0, out);
            break;
        case 3:
            vertical([&](uint32_t r) { return r % 2 != boundary_parity; }, any_col);
            break;
        case 4:
            horizontal_group(topology, 1, 1, out);
            break;
        case 5:
            horizontal_group(topology, 0, 1, out);
            break;
        case 6:
            horizontal_group(topology, 1, 0, out);
            break;
        case 7:
            vertical([&](uint32_t r) { return r == boundary; }, [](uint32_t c) { return c % 2 == 1; });
            break;
        case 8:
            vertical([&](uint32_t r) { return r == boundary; }, [](uint32_t c) { return c % 2 == 0; });
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Circuit generate_random_circuit(const RandomCircuitSpec &spec) {
    spec.topology.validate();
    const uint32_t n = spec.topology.num_qubits();
    Circuit circuit;
    circuit.topology = spec.topology;
    circuit.seed = spec.seed;
    if (spec.depth == 0) {
        return circuit;
    }

    std::mt19937_64 rng(spec.seed);
    Layer first;
    first.index = 1;
    for (uint32_t q = 0; q < n; q++) {
        first.singles.push_back({q, GateKind::H});
    }
    circuit.layers.push_back(std::move(first));

    // Last non-H single-qubit gate per qubit; Identity means none yet.
    std::vector<GateKind> previous(n, GateKind::Identity);
    std::vector<bool> in_cz_before(n, false);
    for (uint32_t t = 2; t <= spec.depth; t++) {
        Layer layer;
        layer.index = t;
        layer.edges = cz_pattern(spec.topology, t);
        std::vector<bool> in_cz(n, false);
        for (const auto &e : layer.edges) {
            in_cz[e.a] = true;
            in_cz[e.b] = true;
        }
        for (uint32_t q = 0; q < n; q++) {
            if (in_cz[q] || !in_cz_before[q]) {
                continue;
            }
            GateKind kind = GateKind::T;
            if (previous[q] != GateKind::Identity) {
                std::array<GateKind, 2> options{};
                size_t k = 0;
                for (GateKind g : {GateKind::SqrtX, GateKind::SqrtY, GateKind::T}) {
                    if (g != previous[q]) {
                        options[k++] = g;
                    }
                }
                kind = options[rng() >> 63];
            }
            previous[q] = kind;
            layer.singles.push_back({q, kind});
        }
        in_cz_before = std::move(in_cz);
        circuit.layers.push_back(std::move(layer));
    }
    return circuit;
}

GateCounts gate_counts(const Circuit &circuit) {
    GateCounts counts;
    for (const auto &layer : circuit.layers) {
        counts.cz += layer.edges.size();
        for (const auto &g : layer.singles) {
            switch (g.kind) {
                case GateKind::Identity:
                    break;
                case GateKind::H:
                    counts.h++;
                    break;
                case GateKind::SqrtX:
                    counts.sqrt_x++;
                    break;
                case GateKind::SqrtY:
                    counts.sqrt_y++;
                    break;
                case GateKind::T:
                    counts.t++;
                    break;
                case GateKind::PauliZ:
                    counts.pauli_z++;
                    break;
                case GateKind::Proj0:
                    counts.proj0++;
                    break;
                case GateKind::Proj1:
                    counts.proj1++;
                    break;
            }
        }
    }
    return counts;
}

}  // namespace gridsplit
