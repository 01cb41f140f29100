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

#ifndef GRIDSPLIT_TESTS_TEST_UTIL_H
#define GRIDSPLIT_TESTS_TEST_UTIL_H

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "gridsplit/circuit.h"

namespace gridsplit_test {

using cd = std::complex<double>;

/// Plain reference simulator: every gate applied on its own, full 2x2 kernel,
/// no fusion and no threading. Qubit k is basis bit (n - 1 - k).
inline std::vector<cd> reference_state(const gridsplit::Circuit &c) {
    const uint32_t n = c.num_qubits();
    std::vector<cd> psi(size_t{1} << n, 0.0);
    psi[0] = 1.0;
    auto bit = [n](uint32_t q) {
        return size_t{1} << (n - 1 - q);
    };
    for (const auto &layer : c.layers) {
        for (const auto &g : layer.singles) {
            if (g.kind == gridsplit::GateKind::Identity) {
                continue;
            }
            auto m = gridsplit::gate_matrix(g.kind);
            const size_t b = bit(g.qubit);
            for (size_t i = 0; i < psi.size(); i++) {
                if (i & b) {
                    continue;
                }
                cd a0 = psi[i], a1 = psi[i | b];
                psi[i] = m[0] * a0 + m[1] * a1;
                psi[i | b] = m[2] * a0 + m[3] * a1;
            }
        }
        for (const auto &e : layer.edges) {
            const size_t mask = bit(e.a) | bit(e.b);
            for (size_t i = 0; i < psi.size(); i++) {
                if ((i & mask) == mask) {
                    psi[i] = -psi[i];
                }
            }
        }
    }
    return psi;
}

template <typename A, typename B>
double max_abs_diff(const A &a, const B &b) {
    double worst = 0;
    for (size_t i = 0; i < std::size(a); i++) {
        worst = std::max(worst, std::abs(cd(a[i]) - cd(b[i])));
    }
    return worst;
}

/// Sequential CZ position of a grid edge, derived edge by edge from the
/// cycle rules: vertical edges below/above the boundary row alternate between
/// positions 1 and 3, boundary edges go to 7 (odd columns) or 8 (even columns),
/// and horizontal edges go to 2, 4, 5 or 6 by (column parity, row parity).
inline uint32_t edge_position(const gridsplit::GridTopology &g, uint32_t a, uint32_t b) {
    const uint32_t ra = a / g.cols, ca = a % g.cols, rb = b / g.cols;
    const uint32_t boundary = (g.rows + 1) / 2 - 1;
    if (ra != rb) {
        if (ra == boundary) {
            return ca % 2 == 1 ? 7 : 8;
        }
        return (ra % 2 == boundary % 2) ? 1 : 3;
    }
    const uint32_t cp = ca % 2, rp = ra % 2;
    if (cp == 0 && rp == 0) return 2;
    if (cp == 1 && rp == 1) return 4;
    if (cp == 0 && rp == 1) return 5;
    return 6;
}

}  // namespace gridsplit_test

#endif
