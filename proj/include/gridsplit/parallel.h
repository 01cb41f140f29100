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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gridsplit {

/// Splits [begin, end) into `workers` contiguous ranges and calls body(lo, hi)
/// for each. Ranges are disjoint; with workers <= 1 everything runs inline.
template <typename Body>
void parallel_ranges(size_t begin, size_t end, unsigned workers, Body body) {
    const size_t n = end > begin ? end - begin : 0;
    if (workers <= 1 || n < 2 * size_t{workers}) {
        if (n > 0) {
            body(begin, end);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; w++) {
        size_t lo = begin + std::min(n, chunk * w);
        size_t hi = begin + std::min(n, chunk * (w + 1));
        if (lo >= hi) {
            break;
        }
        threads.emplace_back([&, lo, hi]() {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> guard(failure_lock);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace gridsplit
