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
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "gridsplit/partition_executor.h"
#include "gridsplit/state_vector.h"

namespace gridsplit {

struct SampleSpec {
    enum class Mode {
        All,
        Explicit,
        SeededUniform,
    };
    Mode mode = Mode::All;
    std::vector<uint64_t> indices;  // Explicit
    uint64_t count = 0;             // SeededUniform
    uint64_t seed = 0;              // SeededUniform
};

/// Sorted, duplicate-free basis indices. SeededUniform draws `count` indices
/// without replacement using Floyd's algorithm over std::mt19937_64(seed).
/// All is refused above `all_cap` qubits.
std::vector<uint64_t> resolve_samples(const SampleSpec &spec, uint32_t num_qubits, uint32_t all_cap = 26);

/// Running sum over copies of upper(x_u) * lower(x_l) for each requested basis
/// index x = x_u * 2^lower_qubits + x_l.
class AmplitudeAccumulator {
   public:
    AmplitudeAccumulator(std::vector<uint64_t> indices, uint32_t upper_qubits, uint32_t lower_qubits);

    void accumulate(const CopyResult &result);
    /// Element-wise sum; both sides must cover the same indices.
    void merge(const AmplitudeAccumulator &other);

    uint32_t num_qubits() const {
        return upper_qubits_ + lower_qubits_;
    }
    const std::vector<uint64_t> &indices() const {
        return indices_;
    }
    const std::vector<Amplitude> &values() const {
        return values_;
    }
    uint64_t folded_copies() const {
        return folded_;
    }
    /// |value|^2 per index, in index order.
    std::vector<std::pair<uint64_t, double>> probabilities() const;

    /// Amplitudes of `state` at the requested indices (dense path, no partitioning).
    static AmplitudeAccumulator from_dense(const StateVector &state, std::vector<uint64_t> indices);

   private:
    std::vector<uint64_t> indices_;
    std::vector<Amplitude> values_;
    uint32_t upper_qubits_;
    uint32_t lower_qubits_;
    bool full_;
    uint64_t folded_ = 0;
};

struct ReconstructionOptions {
    unsigned workers = 1;
    /// Copies folded per block. Block sums are merged in block order, so the
    /// result does not depend on `workers`.
    uint64_t block_size = 16;
    /// Called after every `progress_stride` copies have been merged (0 = never).
    uint64_t progress_stride = 0;
    std::function<void(uint64_t done, uint64_t total)> progress;
};

/// Runs every copy of `runner` on a worker pool and folds the results.
AmplitudeAccumulator reconstruct(
    const CopyRunner &runner, std::vector<uint64_t> indices, const ReconstructionOptions &options = {});

/// `index,re,im,prob`, header included, index as a zero-padded binary string, rows sorted by index.
void write_amplitude_csv(std::ostream &out, const AmplitudeAccumulator &acc);

struct AmplitudeTable {
    uint32_t num_qubits = 0;
    std::vector<uint64_t> indices;
    std::vector<Amplitude> amplitudes;
    std::vector<double> probabilities;
};

/// Parses the amplitude CSV. The qubit count is the width of the index column.
AmplitudeTable read_amplitude_csv(std::istream &in);

}  // namespace gridsplit
