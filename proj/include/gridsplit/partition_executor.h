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
#include <stdexcept>
#include <string>
#include <vector>

#include "gridsplit/circuit.h"
#include "gridsplit/partition_planner.h"
#include "gridsplit/state_vector.h"

namespace gridsplit {

/// Thrown when a part would not fit the configured memory budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Branch choice for every cut gate. Cut gate g (in plan order) reads bit
/// (c - 1 - g) of `bits`, so the earliest cuts are the most significant bits
/// and copies sharing an early-cut prefix are contiguous in integer order.
struct CopyAssignment {
    uint64_t bits = 0;
    uint32_t num_cuts = 0;

    int branch(uint32_t g) const {
        return static_cast<int>((bits >> (num_cuts - 1 - g)) & 1);
    }
};

/// A part's sub-circuit plus the part-local -> global qubit map.
struct PartCircuit {
    Circuit circuit;
    std::vector<uint32_t> global_qubits;
};

/// Branch 0 puts Proj0 on the upper endpoint and Identity on the lower one;
/// branch 1 puts Proj1 and PauliZ. Non-cut gates are copied into their part.
struct CopyCircuits {
    CopyAssignment assignment;
    PartCircuit upper;
    PartCircuit lower;
};

struct CopyResult {
    CopyAssignment assignment;
    StateVector upper;
    StateVector lower;
};

/// Builds the 2^c copies of a bipartite plan one at a time.
class CopyExpander {
   public:
    CopyExpander(const Circuit &circuit, const CutPlan &plan);

    uint64_t size() const {
        return uint64_t{1} << cut_slots_.size();
    }
    uint32_t num_cuts() const {
        return static_cast<uint32_t>(cut_slots_.size());
    }
    CopyCircuits at(uint64_t bits) const;

    const PartCircuit &upper_base() const {
        return upper_;
    }
    const PartCircuit &lower_base() const {
        return lower_;
    }
    /// Number of cut gates in layers <= layer.
    uint32_t cuts_through_layer(uint32_t layer) const;

   private:
    struct CutSlot {
        uint32_t layer;
        uint32_t upper_local;
        uint32_t lower_local;
    };
    PartCircuit upper_;
    PartCircuit lower_;
    std::vector<CutSlot> cut_slots_;
};

struct ExecutorOptions {
    EngineOptions engine;
    /// Largest part, in qubits, that may be simulated.
    uint32_t max_part_qubits = 26;
    /// Layer after which per-prefix part states are cached; 0 disables caching.
    uint32_t checkpoint_layer = 0;
    /// Bytes available for cached checkpoint states.
    uint64_t cache_budget_bytes = uint64_t{1} << 30;
    /// Called once if the cache does not fit the budget and execution falls back to uncached runs.
    std::function<void(const std::string &)> warn;
};

/// Fused-engine run of both parts of one copy from |0...0>.
CopyResult run_copy(const CopyCircuits &copy, const ExecutorOptions &options = {});

/// Default checkpoint: the last layer before the final block of cut layers
/// within `depth`, i.e. 8k + 6 for the last cycle containing a cut. 0 when
/// the plan has no cuts.
uint32_t default_checkpoint_layer(const CutPlan &plan);

/// 2^(number of cuts in layers <= checkpoint_layer).
uint64_t distinct_prefix_count(const CutPlan &plan, uint32_t checkpoint_layer);

/// Executes the copies of a bipartite plan. With a checkpoint layer the part
/// states after that layer are prepared once per cut-prefix in the constructor
/// and then only read, so run() may be called concurrently.
class CopyRunner {
   public:
    CopyRunner(const Circuit &circuit, const CutPlan &plan, ExecutorOptions options);

    uint64_t num_copies() const {
        return expander_.size();
    }
    uint32_t upper_qubits() const {
        return static_cast<uint32_t>(expander_.upper_base().global_qubits.size());
    }
    uint32_t lower_qubits() const {
        return static_cast<uint32_t>(expander_.lower_base().global_qubits.size());
    }
    const CopyExpander &expander() const {
        return expander_;
    }
    bool cache_active() const {
        return !upper_cache_.empty();
    }
    /// Prefixes held in the cache (0 when caching is off).
    uint64_t cached_prefixes() const {
        return upper_cache_.size();
    }

    CopyResult run(uint64_t bits) const;

   private:
    CopyExpander expander_;
    ExecutorOptions options_;
    uint32_t checkpoint_ = 0;
    uint32_t prefix_cuts_ = 0;
    std::vector<StateVector> upper_cache_;
    std::vector<StateVector> lower_cache_;
};

/// Sequential stream of every copy result, in assignment order.
void for_each_copy(const CopyRunner &runner, const std::function<void(CopyResult &&)> &sink);

}  // namespace gridsplit
