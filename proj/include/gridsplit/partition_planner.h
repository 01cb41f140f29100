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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridsplit/circuit.h"

namespace gridsplit {

/// A CZ whose endpoints lie in different parts. For bipartitions `upper` is the
/// endpoint in part 0 and `lower` the endpoint in part 1.
struct CutGate {
    uint32_t layer = 0;
    uint32_t upper = 0;
    uint32_t lower = 0;

    bool operator==(const CutGate &) const = default;
};

struct CutPlan {
    GridTopology topology;
    /// Disjoint, covering, each sorted ascending.
    std::vector<std::vector<uint32_t>> parts;
    /// Ordered by (layer, upper, lower).
    std::vector<CutGate> cut_gates;
    uint32_t depth = 0;

    size_t num_cuts() const {
        return cut_gates.size();
    }
    /// 2^c. Throws std::overflow_error when c >= 64.
    uint64_t copy_count() const;
    /// parts.size() * 2^c as a double; exact for the sizes this tool handles.
    double half_circuit_count() const;
    size_t max_part_size() const;

    /// Throws std::invalid_argument when parts overlap, miss a qubit, or a cut
    /// gate does not straddle two parts.
    void validate() const;
};

/// Upper part = top ceil(rows / 2) rows, lower part = the rest. Cut gates are
/// all CZ edges of `circuit` in layers <= depth that cross the row boundary.
CutPlan plan_bipartition(const Circuit &circuit, uint32_t depth);

/// Same cut, reading the edges from cz_pattern instead of a concrete circuit.
CutPlan plan_bipartition(const GridTopology &topology, uint32_t depth);

enum class Regime {
    FullVector,
    LossyCompression,
    NoCompression,
};

std::string_view regime_name(Regime regime);

struct ComplexityReport {
    uint32_t real_qubits = 0;        // N_r
    uint32_t device_qubits = 0;      // N_m
    double equivalent_qubits = 0;    // N_e
    double half_circuits = 0;        // m = parts * 2^c
    uint64_t cuts = 0;
    Regime regime = Regime::FullVector;
};

/// N_e = max part size + log2(part count * 2^c).
/// Regime: N_e <= N_m full vector; N_e < N_r lossy compression; otherwise none.
ComplexityReport complexity_report(const CutPlan &plan, uint32_t device_qubits);

/// Per-layer effective gate counts n_i: 1, 2, 2, then `bulk` for every later layer.
std::vector<double> layer_gate_counts(double bulk, uint32_t depth);

struct TimeEstimateParams {
    std::vector<double> gates_per_layer;  // n_1..n_d
    double half_circuits = 0;             // m
    double seconds_per_gate = 0;          // t
    double parallel_units = 0;            // s

    void validate() const;
};

/// (sum_i n_i) * m * t / s.
double estimate_time(const TimeEstimateParams &params);

struct CostPreset {
    std::string name;
    GridTopology topology;
    double bulk_gates = 0;
    double seconds_per_gate = 0;
};

/// "56q" (8x7, 8 gates, 0.25 s), "64q" (8x8, 10 gates, 0.38 s), "72q" (8x9, 12 gates, 0.67 s).
const std::vector<CostPreset> &cost_presets();
const CostPreset &find_preset(std::string_view name);

/// Parameters for a preset at a given depth: m follows from the bipartition cut count.
TimeEstimateParams preset_params(const CostPreset &preset, uint32_t depth, double parallel_units);

/// Human-readable duration with the same units as the time tables ("52.3 s", "7.33 min", "2.62 h", "18.0 d").
std::string format_duration(double seconds);

/// Part layouts used for complexity sweeps:
///   2 parts: upper/lower row bands.
///   3 parts: an upper band split at column ceil(cols / 2) plus a full-width lower band;
///            the band height minimises the largest part (ties keep the lower band larger).
///   4 parts: quadrants split at row ceil(rows / 2) and column ceil(cols / 2).
std::vector<std::vector<uint32_t>> partition_layout(const GridTopology &topology, uint32_t part_count);

/// Plan for any layout: cut gates are pattern edges in layers <= depth whose endpoints
/// lie in different parts.
CutPlan plan_layout(const GridTopology &topology, std::vector<std::vector<uint32_t>> parts, uint32_t depth);

/// Same, reading the edges of a concrete circuit.
CutPlan plan_layout(const Circuit &circuit, std::vector<std::vector<uint32_t>> parts, uint32_t depth);

struct MultiPartReport {
    uint32_t depth = 0;
    uint32_t part_count = 0;
    size_t max_part_size = 0;
    uint64_t cuts = 0;
    /// max part size + c_t + log2(part count).
    double complexity_qubits = 0;
};

std::vector<MultiPartReport> sweep_complexity(
    const GridTopology &topology, uint32_t min_depth, uint32_t max_depth, uint32_t part_count);

}  // namespace gridsplit
