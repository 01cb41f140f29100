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

#include "gridsplit/reconstruction.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace gridsplit {

namespace {

uint64_t uniform_below(std::mt19937_64 &rng, uint64_t bound) {
    if ((bound & (bound - 1)) == 0) {
        return rng() & (bound - 1);
    }
    const uint64_t threshold = (0 - bound) % bound;
    while (true) {
        uint64_t x = rng();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

}  // namespace

std::vector<uint64_t> resolve_samples(const SampleSpec &spec, uint32_t num_qubits, uint32_t all_cap) {
    if (num_qubits > 63) {
        throw std::invalid_argument("sampling supports at most 63 qubits");
    }
    const uint64_t space = uint64_t{1} << num_qubits;
    std::vector<uint64_t> out;
    switch (spec.mode) {
        case SampleSpec::Mode::All: {
            if (num_qubits > all_cap) {
                throw std::invalid_argument(
                    "refusing to extract all 2^" + std::to_string(num_qubits) + " amplitudes (cap is " +
                    std::to_string(all_cap) + " qubits)");
            }
            out.resize(space);
            for (uint64_t i = 0; i < space; i++) {
                out[i] = i;
            }
            return out;
        }
        case SampleSpec::Mode::Explicit: {
            out = spec.indices;
            for (uint64_t x : out) {
                if (x >= space) {
                    throw std::invalid_argument("sample index " + std::to_string(x) + " out of range");
                }
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        }
        case SampleSpec::Mode::SeededUniform: {
            if (spec.count > space) {
                throw std::invalid_argument(
                    "cannot draw " + std::to_string(spec.count) + " distinct indices from 2^" +
                    std::to_string(num_qubits));
            }
            std::mt19937_64 rng(spec.seed);
            std::unordered_set<uint64_t> chosen;
            chosen.reserve(spec.count * 2);
            for (uint64_t j = space - spec.count; j < space; j++) {
                uint64_t t = uniform_below(rng, j + 1);
                if (!chosen.insert(t).second) {
                    chosen.insert(j);
                }
            }
            out.assign(chosen.begin(), chosen.end());
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return out;
}

AmplitudeAccumulator::AmplitudeAccumulator(std::vector<uint64_t> indices, uint32_t upper_qubits, uint32_t lower_qubits)
    : indices_(std::move(indices)), upper_qubits_(upper_qubits), lower_qubits_(lower_qubits) {
    if (num_qubits() > 63) {
        throw std::invalid_argument("accumulator supports at most 63 qubits");
    }
    const uint64_t space = uint64_t{1} << num_qubits();
    for (size_t k = 0; k < indices_.size(); k++) {
        if (indices_[k] >= space || (k > 0 && indices_[k] <= indices_[k - 1])) {
            throw std::invalid_argument("accumulator indices must be sorted, unique and in range");
        }
    }
    values_.assign(indices_.size(), Amplitude{0, 0});
    full_ = indices_.size() == space;
}

void AmplitudeAccumulator::accumulate(const CopyResult &result) {
    if (result.upper.num_qubits() != upper_qubits_ || result.lower.num_qubits() != lower_qubits_) {
        throw std::invalid_argument("copy result part sizes do not match the accumulator split");
    }
    const auto up = result.upper.amplitudes();
    const auto lo = result.lower.amplitudes();
    if (full_) {
        // Every index requested: walk the outer product directly.
        const uint64_t lower_size = lo.size();
        for (uint64_t xu = 0; xu < up.size(); xu++) {
            const Amplitude a = up[xu];
            if (a == Amplitude{0, 0}) {
                continue;
            }
            Amplitude *row = values_.data() + xu * lower_size;
            for (uint64_t xl = 0; xl < lower_size; xl++) {
                row[xl] += a * lo[xl];
            }
        }
    } else {
        const uint64_t lower_mask = (uint64_t{1} << lower_qubits_) - 1;
        for (size_t k = 0; k < indices_.size(); k++) {
            const uint64_t x = indices_[k];
            values_[k] += up[x >> lower_qubits_] * lo[x & lower_mask];
        }
    }
    folded_++;
}

void AmplitudeAccumulator::merge(const AmplitudeAccumulator &other) {
    if (other.indices_ != indices_) {
        throw std::invalid_argument("cannot merge accumulators over different indices");
    }
    for (size_t k = 0; k < values_.size(); k++) {
        values_[k] += other.values_[k];
    }
    folded_ += other.folded_;
}

std::vector<std::pair<uint64_t, double>> AmplitudeAccumulator::probabilities() const {
    std::vector<std::pair<uint64_t, double>> out;
    out.reserve(indices_.size());
    for (size_t k = 0; k < indices_.size(); k++) {
        out.emplace_back(indices_[k], std::norm(values_[k]));
    }
    return out;
}

AmplitudeAccumulator AmplitudeAccumulator::from_dense(const StateVector &state, std::vector<uint64_t> indices) {
    AmplitudeAccumulator acc(std::move(indices), state.num_qubits(), 0);
    for (size_t k = 0; k < acc.indices_.size(); k++) {
        acc.values_[k] = state[acc.indices_[k]];
    }
    acc.folded_ = 1;
    return acc;
}

AmplitudeAccumulator reconstruct(
    const CopyRunner &runner, std::vector<uint64_t> indices, const ReconstructionOptions &options) {
    AmplitudeAccumulator total(std::move(indices), runner.upper_qubits(), runner.lower_qubits());
    const uint64_t copies = runner.num_copies();
    const uint64_t block = std::max<uint64_t>(options.block_size, 1);
    const uint64_t blocks = (copies + block - 1) / block;

    std::atomic<uint64_t> next_block{0};
    std::mutex merge_lock;
    std::map<uint64_t, AmplitudeAccumulator> ready;
    uint64_t next_to_merge = 0;
    uint64_t merged_copies = 0;
    std::exception_ptr failure;

    auto worker = [&]() {
        try {
            while (true) {
                const uint64_t b = next_block.fetch_add(1);
                if (b >= blocks) {
                    return;
                }
                AmplitudeAccumulator partial(total.indices(), runner.upper_qubits(), runner.lower_qubits());
                const uint64_t end = std::min(copies, (b + 1) * block);
                for (uint64_t c = b * block; c < end; c++) {
                    partial.accumulate(runner.run(c));
                }
                std::lock_guard<std::mutex> guard(merge_lock);
                ready.emplace(b, std::move(partial));
                while (!ready.empty() && ready.begin()->first == next_to_merge) {
                    const uint64_t before = merged_copies;
                    total.merge(ready.begin()->second);
                    merged_copies += ready.begin()->second.folded_copies();
                    ready.erase(ready.begin());
                    next_to_merge++;
                    if (options.progress && options.progress_stride > 0 &&
                        merged_copies / options.progress_stride != before / options.progress_stride) {
                        options.progress(merged_copies, copies);
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> guard(merge_lock);
            if (!failure) {
                failure = std::current_exception();
            }
            next_block = blocks;
        }
    };

    const unsigned workers = std::max(1u, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return total;
}

void write_amplitude_csv(std::ostream &out, const AmplitudeAccumulator &acc) {
    char buf[128];
    out << "index,re,im,prob\n";
    const auto &idx = acc.indices();
    const auto &vals = acc.values();
    for (size_t k = 0; k < idx.size(); k++) {
        std::snprintf(
            buf, sizeof(buf), ",%.17g,%.17g,%.17g\n", vals[k].real(), vals[k].imag(), std::norm(vals[k]));
        out << basis_label(idx[k], acc.num_qubits()) << buf;
    }
}

AmplitudeTable read_amplitude_csv(std::istream &in) {
    AmplitudeTable table;
    std::string line;
    if (!std::getline(in, line) || line.rfind("index,re,im,prob", 0) != 0) {
        throw std::runtime_error("amplitude CSV must start with the header 'index,re,im,prob'");
    }
    size_t line_no = 1;
    bool first = true;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string label, re, im, prob;
        if (!std::getline(row, label, ',') || !std::getline(row, re, ',') || !std::getline(row, im, ',') ||
            !std::getline(row, prob)) {
            throw std::runtime_error("amplitude CSV line " + std::to_string(line_no) + ": expected 4 fields");
        }
        if (label.empty() || label.size() > 63 || label.find_first_not_of("01") != std::string::npos) {
            throw std::runtime_error("amplitude CSV line " + std::to_string(line_no) + ": bad index '" + label + "'");
        }
        if (first) {
            table.num_qubits = static_cast<uint32_t>(label.size());
            first = false;
        } else if (label.size() != table.num_qubits) {
            throw std::runtime_error("amplitude CSV line " + std::to_string(line_no) + ": index width changed");
        }
        try {
            table.indices.push_back(std::stoull(label, nullptr, 2));
            table.amplitudes.emplace_back(std::stod(re), std::stod(im));
            table.probabilities.push_back(std::stod(prob));
        } catch (const std::logic_error &) {
            throw std::runtime_error("amplitude CSV line " + std::to_string(line_no) + ": unparsable number");
        }
    }
    return table;
}

}  // namespace gridsplit
