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

#include "gridsplit/partition_planner.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <stdexcept>
#include <tuple>

namespace gridsplit {

uint64_t CutPlan::copy_count() const {
    if (cut_gates.size() >= 64) {
        throw std::overflow_error("copy count 2^" + std::to_string(cut_gates.size()) + " does not fit in 64 bits");
    }
    return uint64_t{1} << cut_gates.size();
}

double CutPlan::half_circuit_count() const {
    return std::ldexp(static_cast<double>(parts.size()), static_cast<int>(cut_gates.size()));
}

size_t CutPlan::max_part_size() const {
    size_t best = 0;
    for (const auto &p : parts) {
        best = std::max(best, p.size());
    }
    return best;
}

namespace {

std::vector<int32_t> part_of(const GridTopology &topology, const std::vector<std::vector<uint32_t>> &parts) {
    std::vector<int32_t> owner(topology.num_qubits(), -1);
    for (size_t p = 0; p < parts.size(); p++) {
        for (uint32_t q : parts[p]) {
            if (q >= owner.size()) {
                throw std::invalid_argument("part contains out-of-range qubit " + std::to_string(q));
            }
            if (owner[q] != -1) {
                throw std::invalid_argument("qubit " + std::to_string(q) + " is in two parts");
            }
            owner[q] = static_cast<int32_t>(p);
        }
    }
    for (size_t q = 0; q < owner.size(); q++) {
        if (owner[q] == -1) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " is in no part");
        }
    }
    return owner;
}

template <typename EdgesOfLayer>
CutPlan make_plan(
    const GridTopology &topology,
    std::vector<std::vector<uint32_t>> parts,
    uint32_t depth,
    EdgesOfLayer edges_of_layer) {
    for (auto &p : parts) {
        std::sort(p.begin(), p.end());
    }
    std::vector<int32_t> owner = part_of(topology, parts);
    CutPlan plan;
    plan.topology = topology;
    plan.depth = depth;
    plan.parts = std::move(parts);
    for (uint32_t t = 1; t <= depth; t++) {
        std::vector<CutGate> layer_cuts;
        for (const Edge &e : edges_of_layer(t)) {
            if (owner[e.a] == owner[e.b]) {
                continue;
            }
            bool a_first = owner[e.a] < owner[e.b];
            layer_cuts.push_back({t, a_first ? e.a : e.b, a_first ? e.b : e.a});
        }
        std::sort(layer_cuts.begin(), layer_cuts.end(), [](const CutGate &x, const CutGate &y) {
            return std::tie(x.upper, x.lower) < std::tie(y.upper, y.lower);
        });
        plan.cut_gates.insert(plan.cut_gates.end(), layer_cuts.begin(), layer_cuts.end());
    }
    return plan;
}

std::vector<std::vector<uint32_t>> band_parts(const GridTopology &topology) {
    if (topology.rows < 2) {
        throw std::invalid_argument("a horizontal bipartition needs at least 2 rows");
    }
    std::vector<std::vector<uint32_t>> parts(2);
    const uint32_t split = topology.upper_rows() * topology.cols;
    for (uint32_t q = 0; q < topology.num_qubits(); q++) {
        parts[q < split ? 0 : 1].push_back(q);
    }
    return parts;
}

}  // namespace

void CutPlan::validate() const {
    std::vector<int32_t> owner = part_of(topology, parts);
    for (const auto &g : cut_gates) {
        if (g.upper >= owner.size() || g.lower >= owner.size() || owner[g.upper] == owner[g.lower]) {
            throw std::invalid_argument("cut gate at layer " + std::to_string(g.layer) + " does not straddle two parts");
        }
    }
}

CutPlan plan_bipartition(const Circuit &circuit, uint32_t depth) {
    if (depth > circuit.depth()) {
        throw std::invalid_argument(
            "plan depth " + std::to_string(depth) + " exceeds circuit depth " + std::to_string(circuit.depth()));
    }
    return make_plan(circuit.topology, band_parts(circuit.topology), depth, [&](uint32_t t) -> const std::vector<Edge> & {
        return circuit.layers[t - 1].edges;
    });
}

CutPlan plan_bipartition(const GridTopology &topology, uint32_t depth) {
    return make_plan(topology, band_parts(topology), depth, [&](uint32_t t) {
        return cz_pattern(topology, t);
    });
}

CutPlan plan_layout(const GridTopology &topology, std::vector<std::vector<uint32_t>> parts, uint32_t depth) {
    return make_plan(topology, std::move(parts), depth, [&](uint32_t t) {
        return cz_pattern(topology, t);
    });
}

CutPlan plan_layout(const Circuit &circuit, std::vector<std::vector<uint32_t>> parts, uint32_t depth) {
    if (depth > circuit.depth()) {
        throw std::invalid_argument("plan depth exceeds circuit depth");
    }
    return make_plan(circuit.topology, std::move(parts), depth, [&](uint32_t t) -> const std::vector<Edge> & {
        return circuit.layers[t - 1].edges;
    });
}

std::string_view regime_name(Regime regime) {
    switch (regime) {
        case Regime::FullVector:
            return "full-vector";
        case Regime::LossyCompression:
            return "lossy-compression";
        case Regime::NoCompression:
            return "no-compression";
    }
    return "?";
}

ComplexityReport complexity_report(const CutPlan &plan, uint32_t device_qubits) {
    ComplexityReport r;
    r.real_qubits = plan.topology.num_qubits();
    r.device_qubits = device_qubits;
    r.cuts = plan.num_cuts();
    r.half_circuits = plan.half_circuit_count();
    r.equivalent_qubits = static_cast<double>(plan.max_part_size()) + std::log2(static_cast<double>(plan.parts.size())) +
                          static_cast<double>(plan.num_cuts());
    if (r.equivalent_qubits <= device_qubits) {
        r.regime = Regime::FullVector;
    } else if (r.equivalent_qubits < r.real_qubits) {
        r.regime = Regime::LossyCompression;
    } else {
        r.regime = Regime::NoCompression;
    }
    return r;
}

std::vector<double> layer_gate_counts(double bulk, uint32_t depth) {
    std::vector<double> n;
    n.reserve(depth);
    for (uint32_t i = 1; i <= depth; i++) {
        n.push_back(i == 1 ? 1.0 : i <= 3 ? 2.0 : bulk);
    }
    return n;
}

void TimeEstimateParams::validate() const {
    if (gates_per_layer.empty()) {
        throw std::invalid_argument("time estimate needs depth >= 1");
    }
    if (parallel_units <= 0) {
        throw std::invalid_argument("time estimate needs at least one parallel unit");
    }
    if (half_circuits <= 0 || seconds_per_gate <= 0) {
        throw std::invalid_argument("time estimate needs positive half-circuit count and gate time");
    }
    for (double n : gates_per_layer) {
        if (n <= 0) {
            throw std::invalid_argument("per-layer gate counts must be positive");
        }
    }
}

double estimate_time(const TimeEstimateParams &params) {
    params.validate();
    double gates = 0;
    for (double n : params.gates_per_layer) {
        gates += n;
    }
    return gates * params.half_circuits * params.seconds_per_gate / params.parallel_units;
}

const std::vector<CostPreset> &cost_presets() {
    static const std::vector<CostPreset> presets{
        {"56q", {8, 7}, 8, 0.25},
        {"64q", {8, 8}, 10, 0.38},
        {"72q", {8, 9}, 12, 0.67},
    };
    return presets;
}

const CostPreset &find_preset(std::string_view name) {
    for (const auto &p : cost_presets()) {
        if (p.name == name) {
            return p;
        }
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected 56q, 64q or 72q)");
}

TimeEstimateParams preset_params(const CostPreset &preset, uint32_t depth, double parallel_units) {
    TimeEstimateParams p;
    p.gates_per_layer = layer_gate_counts(preset.bulk_gates, depth);
    p.half_circuits = plan_bipartition(preset.topology, depth).half_circuit_count();
    p.seconds_per_gate = preset.seconds_per_gate;
    p.parallel_units = parallel_units;
    return p;
}

std::string format_duration(double seconds) {
    const char *unit = "s";
    double v = seconds;
    if (seconds >= 86400) {
        unit = "d";
        v = seconds / 86400;
    } else if (seconds >= 3600) {
        unit = "h";
        v = seconds / 3600;
    } else if (seconds >= 60) {
        unit = "min";
        v = seconds / 60;
    }
    int decimals = 2;
    if (v >= 100) {
        decimals = 0;
    } else if (v >= 10) {
        decimals = 1;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f %s", decimals, v, unit);
    return buf;
}

std::vector<std::vector<uint32_t>> partition_layout(const GridTopology &topology, uint32_t part_count) {
    topology.validate();
    const uint32_t r = topology.rows;
    const uint32_t q = topology.cols;
    switch (part_count) {
        case 2:
            return band_parts(topology);
        case 3: {
            if (r < 2 || q < 2) {
                throw std::invalid_argument("a 3-part layout needs at least a 2x2 grid");
            }
            const uint32_t left_cols = (q + 1) / 2;
            uint32_t best_rows = 1;
            size_t best_max = SIZE_MAX;
            for (uint32_t u = 1; u < r; u++) {
                size_t m = std::max<size_t>(size_t{u} * left_cols, size_t{r - u} * q);
                if (m < best_max) {
                    best_max = m;
                    best_rows = u;
                }
            }
            std::vector<std::vector<uint32_t>> parts(3);
            for (uint32_t k = 0; k < topology.num_qubits(); k++) {
                uint32_t row = topology.row_of(k);
                uint32_t col = topology.col_of(k);
                parts[row >= best_rows ? 2 : col < left_cols ? 0 : 1].push_back(k);
            }
            return parts;
        }
        case 4: {
            if (r < 2 || q < 2) {
                throw std::invalid_argument("a 4-part layout needs at least a 2x2 grid");
            }
            const uint32_t top = topology.upper_rows();
            const uint32_t left = (q + 1) / 2;
            std::vector<std::vector<uint32_t>> parts(4);
            for (uint32_t k = 0; k < topology.num_qubits(); k++) {
                uint32_t row = topology.row_of(k);
                uint32_t col = topology.col_of(k);
                parts[(row >= top ? 2 : 0) + (col >= left ? 1 : 0)].push_back(k);
            }
            return parts;
        }
        default:
            throw std::invalid_argument("unsupported part count " + std::to_string(part_count) + " (expected 2, 3 or 4)");
    }
}

std::vector<MultiPartReport> sweep_complexity(
    const GridTopology &topology, uint32_t min_depth, uint32_t max_depth, uint32_t part_count) {
    auto parts = partition_layout(topology, part_count);
    std::vector<MultiPartReport> out;
    if (max_depth < min_depth) {
        return out;
    }
    CutPlan full = plan_layout(topology, parts, max_depth);
    for (uint32_t d = std::max<uint32_t>(min_depth, 1); d <= max_depth; d++) {
        MultiPartReport rep;
        rep.depth = d;
        rep.part_count = part_count;
        rep.max_part_size = full.max_part_size();
        rep.cuts = static_cast<uint64_t>(std::count_if(full.cut_gates.begin(), full.cut_gates.end(), [&](const CutGate &g) {
            return g.layer <= d;
        }));
        rep.complexity_qubits =
            static_cast<double>(rep.max_part_size) + static_cast<double>(rep.cuts) + std::log2(static_cast<double>(part_count));
        out.push_back(rep);
    }
    return out;
}

}  // namespace gridsplit
