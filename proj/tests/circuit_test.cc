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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "test_util.h"

using namespace gridsplit;
using gridsplit_test::edge_position;

namespace {

// Generator rebuilt from the per-edge cycle positions.
Circuit oracle_circuit(GridTopology g, uint32_t depth, uint64_t seed) {
    const uint32_t n = g.num_qubits();
    std::vector<std::pair<uint32_t, uint32_t>> all_edges;
    for (uint32_t r = 0; r < g.rows; r++) {
        for (uint32_t c = 0; c < g.cols; c++) {
            if (c + 1 < g.cols) all_edges.push_back({g.qubit_at(r, c), g.qubit_at(r, c + 1)});
            if (r + 1 < g.rows) all_edges.push_back({g.qubit_at(r, c), g.qubit_at(r + 1, c)});
        }
    }
    Circuit out;
    out.topology = g;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    std::vector<int> last(n, -1);  // -1 none, 0 SX, 1 SY, 2 T
    std::vector<bool> busy(n, false);
    for (uint32_t t = 1; t <= depth; t++) {
        Layer layer;
        layer.index = t;
        if (t == 1) {
            for (uint32_t q = 0; q < n; q++) layer.singles.push_back({q, GateKind::H});
            out.layers.push_back(layer);
            continue;
        }
        std::vector<bool> now(n, false);
        for (auto [a, b] : all_edges) {
            if (edge_position(g, a, b) == (t - 1) % 8 + 1) {
                layer.edges.emplace_back(a, b);
                now[a] = now[b] = true;
            }
        }
        std::sort(layer.edges.begin(), layer.edges.end());
        for (uint32_t q = 0; q < n; q++) {
            if (!busy[q] || now[q]) continue;
            int pick = 2;
            if (last[q] >= 0) {
                std::vector<int> opts;
                for (int k = 0; k < 3; k++) if (k != last[q]) opts.push_back(k);
                pick = opts[rng() >> 63];
            }
            last[q] = pick;
            const GateKind kinds[] = {GateKind::SqrtX, GateKind::SqrtY, GateKind::T};
            layer.singles.push_back({q, kinds[pick]});
        }
        busy = now;
        out.layers.push_back(layer);
    }
    return out;
}

}  // namespace

TEST(circuit, cycle_position) {
    EXPECT_EQ(cycle_position(1), 1u);
    EXPECT_EQ(cycle_position(8), 8u);
    EXPECT_EQ(cycle_position(9), 1u);
    EXPECT_EQ(cycle_position(22), 6u);
    EXPECT_THROW(cycle_position(0), std::invalid_argument);
}

TEST(circuit, pattern_covers_each_edge_once_per_period) {
    for (GridTopology g : {GridTopology{4, 2}, GridTopology{5, 4}, GridTopology{6, 7}, GridTopology{8, 8}}) {
        std::map<Edge, int> seen;
        for (uint32_t t = 9; t <= 16; t++) {
            std::set<uint32_t> used;
            for (const auto &e : cz_pattern(g, t)) {
                EXPECT_TRUE(used.insert(e.a).second);
                EXPECT_TRUE(used.insert(e.b).second);
                EXPECT_EQ(edge_position(g, e.a, e.b), cycle_position(t));
                seen[e]++;
            }
        }
        const size_t grid_edges = g.rows * (g.cols - 1) + (g.rows - 1) * g.cols;
        EXPECT_EQ(seen.size(), grid_edges);
        for (auto &[e, k] : seen) EXPECT_EQ(k, 1);
    }
}

TEST(circuit, first_layer_has_no_cz) {
    EXPECT_TRUE(cz_pattern({8, 8}, 1).empty());
    EXPECT_FALSE(cz_pattern({8, 8}, 9).empty());
}

TEST(circuit, crossing_edges_only_at_positions_7_and_8) {
    GridTopology g{8, 7};
    for (uint32_t t = 2; t <= 16; t++) {
        for (const auto &e : cz_pattern(g, t)) {
            bool crosses = g.row_of(e.a) < g.upper_rows() && g.row_of(e.b) >= g.upper_rows();
            EXPECT_EQ(crosses, cycle_position(t) >= 7) << t;
        }
    }
}

TEST(circuit, generator_matches_oracle) {
    for (GridTopology g : {GridTopology{4, 2}, GridTopology{3, 3}, GridTopology{5, 4}, GridTopology{6, 7}}) {
        for (uint64_t seed : {0ull, 1ull, 7ull, 12345ull}) {
            EXPECT_EQ(generate_random_circuit({g, 24, seed}), oracle_circuit(g, 24, seed));
        }
    }
}

TEST(circuit, generator_rules) {
    Circuit c = generate_random_circuit({{6, 7}, 40, 3});
    c.validate();
    const uint32_t n = c.num_qubits();
    std::vector<GateKind> prev(n, GateKind::Identity);
    for (const auto &layer : c.layers) {
        for (const auto &s : layer.singles) {
            if (s.kind == GateKind::H) {
                EXPECT_EQ(layer.index, 1u);
                continue;
            }
            if (prev[s.qubit] == GateKind::Identity) {
                EXPECT_EQ(s.kind, GateKind::T);
            } else {
                EXPECT_NE(s.kind, prev[s.qubit]);
            }
            prev[s.qubit] = s.kind;
        }
    }
}

TEST(circuit, cz_totals) {
    EXPECT_EQ(gate_counts(generate_random_circuit({{6, 7}, 22, 7})).cz, 192u);
    EXPECT_EQ(gate_counts(generate_random_circuit({{8, 7}, 22, 7})).cz, 270u);
    EXPECT_EQ(gate_counts(generate_random_circuit({{8, 8}, 22, 7})).cz, 312u);
}

TEST(circuit, deterministic_and_seed_sensitive) {
    EXPECT_EQ(generate_random_circuit({{5, 4}, 20, 9}), generate_random_circuit({{5, 4}, 20, 9}));
    EXPECT_NE(generate_random_circuit({{5, 4}, 20, 9}), generate_random_circuit({{5, 4}, 20, 10}));
}

TEST(circuit, depth_one_is_hadamards) {
    Circuit c = generate_random_circuit({{3, 3}, 1, 0});
    ASSERT_EQ(c.depth(), 1u);
    GateCounts counts = gate_counts(c);
    EXPECT_EQ(counts.h, 9u);
    EXPECT_EQ(counts.total(), 9u);
}

TEST(circuit, gate_matrices) {
    auto mul = [](const Matrix2 &a, const Matrix2 &b) {
        return Matrix2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                       a[2] * b[1] + a[3] * b[3]};
    };
    auto near = [](const Matrix2 &a, const Matrix2 &b) {
        for (int k = 0; k < 4; k++) {
            if (std::abs(a[k] - b[k]) > 1e-14) return false;
        }
        return true;
    };
    Matrix2 x{0, 1, 1, 0};
    Matrix2 y{0, Amplitude(0, -1), Amplitude(0, 1), 0};
    Matrix2 z{1, 0, 0, -1};
    Matrix2 id{1, 0, 0, 1};
    EXPECT_TRUE(near(mul(gate_matrix(GateKind::SqrtX), gate_matrix(GateKind::SqrtX)), x));
    EXPECT_TRUE(near(mul(gate_matrix(GateKind::SqrtY), gate_matrix(GateKind::SqrtY)), y));
    EXPECT_TRUE(near(mul(gate_matrix(GateKind::H), gate_matrix(GateKind::H)), id));
    Matrix2 t2 = mul(gate_matrix(GateKind::T), gate_matrix(GateKind::T));
    EXPECT_TRUE(near(mul(t2, t2), z));
    EXPECT_TRUE(near(gate_matrix(GateKind::PauliZ), z));
    for (GateKind k : {GateKind::T, GateKind::PauliZ, GateKind::Proj0, GateKind::Proj1, GateKind::Identity}) {
        EXPECT_TRUE(is_diagonal(k));
    }
    for (GateKind k : {GateKind::H, GateKind::SqrtX, GateKind::SqrtY}) {
        EXPECT_FALSE(is_diagonal(k));
    }
}

TEST(circuit, layer_validation) {
    Layer l;
    l.index = 2;
    l.singles = {{0, GateKind::T}};
    l.edges = {Edge(0, 1)};
    EXPECT_THROW(l.validate(4), std::invalid_argument);
    l.edges = {Edge(1, 5)};
    EXPECT_THROW(l.validate(4), std::invalid_argument);
    l.edges = {Edge(1, 2)};
    EXPECT_NO_THROW(l.validate(4));
}

TEST(circuit, topology_validation) {
    EXPECT_THROW(GridTopology({0, 3}).validate(), std::invalid_argument);
    EXPECT_NO_THROW(GridTopology({8, 9}).validate());
}
