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

#include "gridsplit/partition_executor.h"

#include <algorithm>
#include <cmath>

namespace gridsplit {

namespace {

bool is_prefix_band(const std::vector<uint32_t> &part, uint32_t first) {
    for (size_t k = 0; k < part.size(); k++) {
        if (part[k] != first + k) {
            return false;
        }
    }
    return true;
}

PartCircuit empty_part(const GridTopology &topology, uint32_t first, uint32_t size, uint32_t depth) {
    PartCircuit part;
    part.circuit.topology = {size / topology.cols, topology.cols};
    for (uint32_t k = 0; k < size; k++) {
        part.global_qubits.push_back(first + k);
    }
    for (uint32_t t = 1; t <= depth; t++) {
        Layer layer;
        layer.index = t;
        part.circuit.layers.push_back(std::move(layer));
    }
    return part;
}

}  // namespace

CopyExpander::CopyExpander(const Circuit &circuit, const CutPlan &plan) {
    if (plan.parts.size() != 2) {
        throw std::invalid_argument("copy expansion needs a bipartite plan");
    }
    if (!(plan.topology == circuit.topology)) {
        throw std::invalid_argument("plan/circuit mismatch: different topologies");
    }
    if (plan.depth != circuit.depth()) {
        throw std::invalid_argument(
            "plan/circuit mismatch: plan covers " + std::to_string(plan.depth) + " layers, circuit has " +
            std::to_string(circuit.depth()));
    }
    const uint32_t u = static_cast<uint32_t>(plan.parts[0].size());
    const uint32_t n = circuit.num_qubits();
    if (!is_prefix_band(plan.parts[0], 0) || !is_prefix_band(plan.parts[1], u) || u % circuit.topology.cols != 0) {
        throw std::invalid_argument("plan/circuit mismatch: parts must be the upper and lower row bands");
    }
    CutPlan expected = plan_bipartition(circuit, circuit.depth());
    if (expected.cut_gates != plan.cut_gates) {
        throw std::invalid_argument("plan/circuit mismatch: cut gates differ from the circuit's crossing edges");
    }

    upper_ = empty_part(circuit.topology, 0, u, circuit.depth());
    lower_ = empty_part(circuit.topology, u, n - u, circuit.depth());
    for (const Layer &layer : circuit.layers) {
        Layer &up = upper_.circuit.layers[layer.index - 1];
        Layer &lo = lower_.circuit.layers[layer.index - 1];
        for (const auto &g : layer.singles) {
            if (g.qubit < u) {
                up.singles.push_back(g);
            } else {
                lo.singles.push_back({g.qubit - u, g.kind});
            }
        }
        for (const auto &e : layer.edges) {
            if (e.b < u) {
                up.edges.push_back(e);
            } else if (e.a >= u) {
                lo.edges.emplace_back(e.a - u, e.b - u);
            }
        }
    }
    for (const auto &g : plan.cut_gates) {
        cut_slots_.push_back({g.layer, g.upper, g.lower - u});
    }
    if (cut_slots_.size() >= 64) {
        throw std::overflow_error("too many cut gates to enumerate copies");
    }
}

CopyCircuits CopyExpander::at(uint64_t bits) const {
    if (bits >= size()) {
        throw std::out_of_range("copy index out of range");
    }
    CopyCircuits copy{{bits, num_cuts()}, upper_, lower_};
    for (uint32_t g = 0; g < cut_slots_.size(); g++) {
        const CutSlot &slot = cut_slots_[g];
        const bool one = copy.assignment.branch(g) == 1;
        copy.upper.circuit.layers[slot.layer - 1].singles.push_back(
            {slot.upper_local, one ? GateKind::Proj1 : GateKind::Proj0});
        copy.lower.circuit.layers[slot.layer - 1].singles.push_back(
            {slot.lower_local, one ? GateKind::PauliZ : GateKind::Identity});
    }
    return copy;
}

uint32_t CopyExpander::cuts_through_layer(uint32_t layer) const {
    return static_cast<uint32_t>(std::count_if(cut_slots_.begin(), cut_slots_.end(), [&](const CutSlot &s) {
        return s.layer <= layer;
    }));
}

namespace {

void check_part_size(const char *name, uint32_t qubits, uint32_t limit) {
    if (qubits > limit) {
        throw ResourceError(
            std::string(name) + " part has " + std::to_string(qubits) + " qubits, above the limit of " +
            std::to_string(limit));
    }
}

}  // namespace

CopyResult run_copy(const CopyCircuits &copy, const ExecutorOptions &options) {
    check_part_size("upper", copy.upper.circuit.num_qubits(), options.max_part_qubits);
    check_part_size("lower", copy.lower.circuit.num_qubits(), options.max_part_qubits);
    CopyResult result{copy.assignment, StateVector(copy.upper.circuit.num_qubits()),
                      StateVector(copy.lower.circuit.num_qubits())};
    run_circuit(result.upper, copy.upper.circuit, options.engine);
    run_circuit(result.lower, copy.lower.circuit, options.engine);
    return result;
}

uint32_t default_checkpoint_layer(const CutPlan &plan) {
    if (plan.cut_gates.empty()) {
        return 0;
    }
    std::vector<uint32_t> layers;
    for (const auto &g : plan.cut_gates) {
        if (layers.empty() || layers.back() != g.layer) {
            layers.push_back(g.layer);
        }
    }
    uint32_t start = layers.back();
    for (size_t k = layers.size() - 1; k > 0 && layers[k - 1] + 1 == layers[k]; k--) {
        start = layers[k - 1];
    }
    return start - 1;
}

uint64_t distinct_prefix_count(const CutPlan &plan, uint32_t checkpoint_layer) {
    size_t c = std::count_if(plan.cut_gates.begin(), plan.cut_gates.end(), [&](const CutGate &g) {
        return g.layer <= checkpoint_layer;
    });
    if (c >= 64) {
        throw std::overflow_error("prefix count does not fit in 64 bits");
    }
    return uint64_t{1} << c;
}

CopyRunner::CopyRunner(const Circuit &circuit, const CutPlan &plan, ExecutorOptions options)
    : expander_(circuit, plan), options_(std::move(options)) {
    check_part_size("upper", upper_qubits(), options_.max_part_qubits);
    check_part_size("lower", lower_qubits(), options_.max_part_qubits);
    if (options_.checkpoint_layer > circuit.depth()) {
        throw std::invalid_argument("checkpoint layer exceeds circuit depth");
    }
    checkpoint_ = options_.checkpoint_layer;
    if (checkpoint_ == 0) {
        return;
    }
    prefix_cuts_ = expander_.cuts_through_layer(checkpoint_);
    const double bytes = std::ldexp(1.0, static_cast<int>(prefix_cuts_)) *
                         (std::ldexp(1.0, static_cast<int>(upper_qubits())) +
                          std::ldexp(1.0, static_cast<int>(lower_qubits()))) *
                         sizeof(Amplitude);
    if (bytes > static_cast<double>(options_.cache_budget_bytes)) {
        if (options_.warn) {
            options_.warn(
                "checkpoint cache needs " + std::to_string(static_cast<uint64_t>(bytes)) + " bytes, budget is " +
                std::to_string(options_.cache_budget_bytes) + "; running copies without the cache");
        }
        checkpoint_ = 0;
        prefix_cuts_ = 0;
        return;
    }
    const uint64_t prefixes = uint64_t{1} << prefix_cuts_;
    const uint32_t shift = expander_.num_cuts() - prefix_cuts_;
    upper_cache_.reserve(prefixes);
    lower_cache_.reserve(prefixes);
    for (uint64_t p = 0; p < prefixes; p++) {
        CopyCircuits copy = expander_.at(p << shift);
        StateVector up(upper_qubits());
        StateVector lo(lower_qubits());
        run_layers(up, copy.upper.circuit, 1, checkpoint_, options_.engine);
        run_layers(lo, copy.lower.circuit, 1, checkpoint_, options_.engine);
        upper_cache_.push_back(std::move(up));
        lower_cache_.push_back(std::move(lo));
    }
}

CopyResult CopyRunner::run(uint64_t bits) const {
    CopyCircuits copy = expander_.at(bits);
    if (!cache_active()) {
        return run_copy(copy, options_);
    }
    const uint64_t prefix = bits >> (expander_.num_cuts() - prefix_cuts_);
    CopyResult result{copy.assignment, upper_cache_[prefix], lower_cache_[prefix]};
    const uint32_t depth = copy.upper.circuit.depth();
    run_layers(result.upper, copy.upper.circuit, checkpoint_ + 1, depth, options_.engine);
    run_layers(result.lower, copy.lower.circuit, checkpoint_ + 1, depth, options_.engine);
    return result;
}

void for_each_copy(const CopyRunner &runner, const std::function<void(CopyResult &&)> &sink) {
    for (uint64_t b = 0; b < runner.num_copies(); b++) {
        sink(runner.run(b));
    }
}

}  // namespace gridsplit
