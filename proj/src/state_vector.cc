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

#include "gridsplit/state_vector.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "gridsplit/parallel.h"

namespace gridsplit {

static_assert(std::endian::native == std::endian::little, "state dumps assume a little-endian host");

StateVector::StateVector(uint32_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxStateQubits) {
        throw std::length_error("state vector of " + std::to_string(num_qubits) + " qubits is too large");
    }
    amps_.assign(size_t{1} << num_qubits, Amplitude{0, 0});
    amps_[0] = 1;
}

StateVector StateVector::basis_state(uint32_t num_qubits, uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.size()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amps_[0] = 0;
    s.amps_[index] = 1;
    return s;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

Amplitude amplitude(const StateVector &state, uint64_t index) {
    if (index >= state.size()) {
        throw std::out_of_range(
            "basis index " + std::to_string(index) + " out of range for " + std::to_string(state.num_qubits()) +
            " qubits");
    }
    return state[index];
}

void DiagonalLayerPlan::validate(uint32_t num_qubits) const {
    std::vector<uint8_t> role(num_qubits, 0);
    auto claim = [&](uint32_t q, uint8_t r) {
        if (q >= num_qubits) {
            throw std::invalid_argument("diagonal plan: qubit " + std::to_string(q) + " out of range");
        }
        if (role[q] != 0 && !(role[q] == 2 && r == 2)) {
            throw std::invalid_argument("diagonal plan: qubit " + std::to_string(q) + " has overlapping roles");
        }
        role[q] = r;
    };
    for (uint32_t q : t_qubits) {
        claim(q, 1);
    }
    // A qubit may sit on at most one CZ edge per layer.
    std::vector<bool> on_edge(num_qubits, false);
    for (const auto &e : cz_edges) {
        for (uint32_t q : {e.a, e.b}) {
            if (q < num_qubits && on_edge[q]) {
                throw std::invalid_argument("diagonal plan: qubit " + std::to_string(q) + " is on two CZ edges");
            }
            claim(q, 2);
            on_edge[q] = true;
        }
    }
    for (uint32_t q : proj0_qubits) {
        claim(q, 3);
    }
    for (uint32_t q : proj1_qubits) {
        claim(q, 4);
    }
    for (uint32_t q : z_qubits) {
        claim(q, 5);
    }
}

FusedDiagonal FusedDiagonal::compile(const DiagonalLayerPlan &plan, uint32_t num_qubits) {
    plan.validate(num_qubits);
    auto bit = [&](uint32_t q) {
        return uint64_t{1} << (num_qubits - 1 - q);
    };
    FusedDiagonal f;
    for (uint32_t q : plan.t_qubits) {
        f.t_mask |= bit(q);
    }
    for (uint32_t q : plan.z_qubits) {
        f.z_mask |= bit(q);
    }
    for (uint32_t q : plan.proj0_qubits) {
        f.proj0_mask |= bit(q);
    }
    for (uint32_t q : plan.proj1_qubits) {
        f.proj1_mask |= bit(q);
    }
    for (const auto &e : plan.cz_edges) {
        f.edge_masks.push_back(bit(e.a) | bit(e.b));
    }
    // ((1 + i) / sqrt 2)^k for k = 0..7; index 4 is -1.
    const double s = 1.0 / std::sqrt(2.0);
    f.phases = {
        Amplitude{1, 0},
        Amplitude{s, s},
        Amplitude{0, 1},
        Amplitude{-s, s},
        Amplitude{-1, 0},
        Amplitude{-s, -s},
        Amplitude{0, -1},
        Amplitude{s, -s},
    };
    return f;
}

namespace {

struct SpanStore {
    std::span<Amplitude> amps;
    Amplitude load(uint64_t i) const {
        return amps[i];
    }
    void store(uint64_t i, Amplitude v) const {
        amps[i] = v;
    }
};

}  // namespace

void apply_single_qubit(StateVector &state, const Matrix2 &gate, uint32_t q, unsigned workers) {
    if (q >= state.num_qubits()) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range");
    }
    const uint64_t stride = state.qubit_mask(q);
    const uint64_t low = stride - 1;
    auto amps = state.amplitudes();
    const auto [m00, m01, m10, m11] = gate;
    parallel_ranges(0, state.size() / 2, workers, [&](size_t lo, size_t hi) {
        for (uint64_t p = lo; p < hi; p++) {
            uint64_t i0 = ((p & ~low) << 1) | (p & low);
            uint64_t i1 = i0 | stride;
            Amplitude a0 = amps[i0];
            Amplitude a1 = amps[i1];
            amps[i0] = m00 * a0 + m01 * a1;
            amps[i1] = m10 * a0 + m11 * a1;
        }
    });
}

void apply_cz(StateVector &state, uint32_t a, uint32_t b) {
    if (a >= state.num_qubits() || b >= state.num_qubits() || a == b) {
        throw std::out_of_range("CZ qubits out of range");
    }
    const uint64_t mask = state.qubit_mask(a) | state.qubit_mask(b);
    auto amps = state.amplitudes();
    for (uint64_t i = 0; i < amps.size(); i++) {
        if ((i & mask) == mask) {
            amps[i] = -amps[i];
        }
    }
}

void apply_fused_diagonal(StateVector &state, const DiagonalLayerPlan &plan, const EngineOptions &options) {
    FusedDiagonal fused = FusedDiagonal::compile(plan, state.num_qubits());
    SpanStore store{state.amplitudes()};
    parallel_ranges(0, state.size(), options.workers, [&](size_t lo, size_t hi) {
        fused.apply(store, lo, hi);
    });
    if (options.counter != nullptr) {
        options.counter->reads += state.size();
        options.counter->writes += state.size();
        options.counter->fused_passes += 1;
    }
}

void run_layers(
    StateVector &state, const Circuit &circuit, uint32_t first_layer, uint32_t last_layer, const EngineOptions &options) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument(
            "circuit has " + std::to_string(circuit.num_qubits()) + " qubits but state has " +
            std::to_string(state.num_qubits()));
    }
    if (last_layer > circuit.depth()) {
        throw std::invalid_argument("layer range exceeds circuit depth");
    }
    for (uint32_t t = std::max<uint32_t>(first_layer, 1); t <= last_layer; t++) {
        const Layer &layer = circuit.layers[t - 1];
        if (!options.fuse) {
            for (const auto &g : layer.singles) {
                if (g.kind != GateKind::Identity) {
                    apply_single_qubit(state, gate_matrix(g.kind), g.qubit, options.workers);
                }
            }
            for (const auto &e : layer.edges) {
                apply_cz(state, e.a, e.b);
            }
            continue;
        }
        DiagonalLayerPlan plan;
        plan.cz_edges = layer.edges;
        for (const auto &g : layer.singles) {
            switch (g.kind) {
                case GateKind::Identity:
                    break;
                case GateKind::T:
                    plan.t_qubits.push_back(g.qubit);
                    break;
                case GateKind::PauliZ:
                    plan.z_qubits.push_back(g.qubit);
                    break;
                case GateKind::Proj0:
                    plan.proj0_qubits.push_back(g.qubit);
                    break;
                case GateKind::Proj1:
                    plan.proj1_qubits.push_back(g.qubit);
                    break;
                default:
                    apply_single_qubit(state, gate_matrix(g.kind), g.qubit, options.workers);
                    break;
            }
        }
        if (plan.gate_count() > 0) {
            apply_fused_diagonal(state, plan, options);
        }
    }
}

void run_circuit(StateVector &state, const Circuit &circuit, const EngineOptions &options) {
    run_layers(state, circuit, 1, circuit.depth(), options);
}

void write_state_binary(std::ostream &out, const StateVector &state) {
    uint64_t n = state.num_qubits();
    out.write(reinterpret_cast<const char *>(&n), sizeof(n));
    auto amps = state.amplitudes();
    for (const auto &a : amps) {
        double parts[2] = {a.real(), a.imag()};
        out.write(reinterpret_cast<const char *>(parts), sizeof(parts));
    }
    if (!out) {
        throw std::runtime_error("failed writing state dump");
    }
}

StateVector read_state_binary(std::istream &in) {
    uint64_t n = 0;
    in.read(reinterpret_cast<char *>(&n), sizeof(n));
    if (!in || n > kMaxStateQubits) {
        throw std::runtime_error("bad state dump header");
    }
    StateVector s(static_cast<uint32_t>(n));
    auto amps = s.amplitudes();
    for (auto &a : amps) {
        double parts[2];
        in.read(reinterpret_cast<char *>(parts), sizeof(parts));
        if (!in) {
            throw std::runtime_error("truncated state dump");
        }
        a = Amplitude{parts[0], parts[1]};
    }
    return s;
}

std::string basis_label(uint64_t index, uint32_t num_qubits) {
    std::string label(num_qubits, '0');
    for (uint32_t k = 0; k < num_qubits; k++) {
        if ((index >> (num_qubits - 1 - k)) & 1) {
            label[k] = '1';
        }
    }
    return label;
}

void write_state_csv(std::ostream &out, const StateVector &state) {
    char buf[128];
    out << "index,re,im,prob\n";
    for (uint64_t i = 0; i < state.size(); i++) {
        const Amplitude a = state[i];
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g,%.17g\n", a.real(), a.imag(), std::norm(a));
        out << basis_label(i, state.num_qubits()) << buf;
    }
}

}  // namespace gridsplit
