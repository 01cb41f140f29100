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
#include <atomic>
#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gridsplit/circuit.h"

namespace gridsplit {

/// Dense state over `num_qubits` qubits. Basis index bit (n - 1 - k) holds
/// qubit k, so qubit 0 is the most significant bit.
class StateVector {
   public:
    StateVector() = default;
    /// |0...0>.
    explicit StateVector(uint32_t num_qubits);
    static StateVector basis_state(uint32_t num_qubits, uint64_t index);

    uint32_t num_qubits() const {
        return num_qubits_;
    }
    size_t size() const {
        return amps_.size();
    }
    std::span<Amplitude> amplitudes() {
        return amps_;
    }
    std::span<const Amplitude> amplitudes() const {
        return amps_;
    }
    Amplitude &operator[](size_t index) {
        return amps_[index];
    }
    const Amplitude &operator[](size_t index) const {
        return amps_[index];
    }
    double norm_squared() const;

    /// Bit mask of qubit q inside a basis index.
    uint64_t qubit_mask(uint32_t q) const {
        return uint64_t{1} << (num_qubits_ - 1 - q);
    }

   private:
    uint32_t num_qubits_ = 0;
    std::vector<Amplitude> amps_;
};

/// Largest qubit count a StateVector may be allocated for.
inline constexpr uint32_t kMaxStateQubits = 40;

/// Bounds-checked lookup.
Amplitude amplitude(const StateVector &state, uint64_t index);

/// Diagonal gates of one layer, by role.
struct DiagonalLayerPlan {
    std::vector<uint32_t> t_qubits;
    std::vector<Edge> cz_edges;
    std::vector<uint32_t> proj0_qubits;
    std::vector<uint32_t> proj1_qubits;
    std::vector<uint32_t> z_qubits;

    size_t gate_count() const {
        return t_qubits.size() + cz_edges.size() + proj0_qubits.size() + proj1_qubits.size() + z_qubits.size();
    }
    /// Throws std::invalid_argument if a qubit has two roles or is out of range.
    void validate(uint32_t num_qubits) const;
};

/// Masks compiled from a DiagonalLayerPlan. The multiplier of basis index i is
///
///   e^{i pi/4 * (m1 + 4 * (m2 + mz))}   (zero if a projector rejects i)
///
/// where m1 counts T qubits set in i, m2 counts CZ edges with both ends set,
/// and mz counts Z qubits set.
struct FusedDiagonal {
    uint64_t t_mask = 0;
    uint64_t z_mask = 0;
    uint64_t proj0_mask = 0;
    uint64_t proj1_mask = 0;
    std::vector<uint64_t> edge_masks;
    std::array<Amplitude, 8> phases{};

    static FusedDiagonal compile(const DiagonalLayerPlan &plan, uint32_t num_qubits);

    Amplitude factor(uint64_t index) const {
        if ((index & proj0_mask) != 0 || (index & proj1_mask) != proj1_mask) {
            return 0.0;
        }
        unsigned k = static_cast<unsigned>(std::popcount(index & t_mask));
        unsigned sign = static_cast<unsigned>(std::popcount(index & z_mask));
        for (uint64_t m : edge_masks) {
            sign += (index & m) == m;
        }
        return phases[(k + 4 * sign) & 7];
    }

    /// One load and one store per index in [begin, end).
    template <typename Store>
    void apply(Store &store, uint64_t begin, uint64_t end) const {
        for (uint64_t i = begin; i < end; i++) {
            store.store(i, store.load(i) * factor(i));
        }
    }
};

/// Running totals of amplitude reads and writes made by the fused pass.
struct MemoryOpCounter {
    std::atomic<uint64_t> reads{0};
    std::atomic<uint64_t> writes{0};
    std::atomic<uint64_t> fused_passes{0};
};

struct EngineOptions {
    unsigned workers = 1;
    /// Apply each layer's diagonal gates as one fused pass.
    bool fuse = true;
    MemoryOpCounter *counter = nullptr;
};

void apply_single_qubit(StateVector &state, const Matrix2 &gate, uint32_t q, unsigned workers = 1);
void apply_cz(StateVector &state, uint32_t a, uint32_t b);
void apply_fused_diagonal(StateVector &state, const DiagonalLayerPlan &plan, const EngineOptions &options = {});

/// Runs layers [first_layer, last_layer] (1-based, inclusive) of `circuit`.
void run_layers(
    StateVector &state, const Circuit &circuit, uint32_t first_layer, uint32_t last_layer, const EngineOptions &options);

/// Runs every layer of `circuit` on `state`.
void run_circuit(StateVector &state, const Circuit &circuit, const EngineOptions &options = {});

/// Binary dump: uint64 qubit count, then interleaved (re, im) doubles, all little-endian.
void write_state_binary(std::ostream &out, const StateVector &state);
StateVector read_state_binary(std::istream &in);

/// CSV dump `index,re,im,prob` with the index as a zero-padded binary string.
void write_state_csv(std::ostream &out, const StateVector &state);

std::string basis_label(uint64_t index, uint32_t num_qubits);

}  // namespace gridsplit
