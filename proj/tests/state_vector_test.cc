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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "test_util.h"

using namespace gridsplit;
using gridsplit_test::max_abs_diff;

namespace {

StateVector random_state(uint32_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> d;
    StateVector s(n);
    double norm = 0;
    for (size_t i = 0; i < s.size(); i++) {
        s[i] = Amplitude(d(rng), d(rng));
        norm += std::norm(s[i]);
    }
    for (size_t i = 0; i < s.size(); i++) s[i] /= std::sqrt(norm);
    return s;
}

DiagonalLayerPlan random_plan(uint32_t n, std::mt19937_64 &rng, bool with_projectors) {
    std::vector<uint32_t> qs(n);
    std::iota(qs.begin(), qs.end(), 0);
    std::shuffle(qs.begin(), qs.end(), rng);
    DiagonalLayerPlan p;
    size_t k = 0;
    while (k < n) {
        int role = static_cast<int>(rng() % (with_projectors ? 6 : 3));
        if (role == 0 && k + 1 < n) {
            p.cz_edges.emplace_back(qs[k], qs[k + 1]);
            k += 2;
            continue;
        }
        switch (role) {
            case 1: p.t_qubits.push_back(qs[k]); break;
            case 2: break;
            case 3: p.z_qubits.push_back(qs[k]); break;
            case 4: p.proj0_qubits.push_back(qs[k]); break;
            case 5: p.proj1_qubits.push_back(qs[k]); break;
        }
        k++;
    }
    return p;
}

void apply_sequential(StateVector &s, const DiagonalLayerPlan &p) {
    for (uint32_t q : p.t_qubits) apply_single_qubit(s, gate_matrix(GateKind::T), q);
    for (const Edge &e : p.cz_edges) apply_cz(s, e.a, e.b);
    for (uint32_t q : p.z_qubits) apply_single_qubit(s, gate_matrix(GateKind::PauliZ), q);
    for (uint32_t q : p.proj0_qubits) apply_single_qubit(s, gate_matrix(GateKind::Proj0), q);
    for (uint32_t q : p.proj1_qubits) apply_single_qubit(s, gate_matrix(GateKind::Proj1), q);
}

struct CountingStore {
    std::vector<Amplitude> &data;
    uint64_t loads = 0;
    uint64_t stores = 0;
    Amplitude load(uint64_t i) {
        loads++;
        return data[i];
    }
    void store(uint64_t i, Amplitude v) {
        stores++;
        data[i] = v;
    }
};

}  // namespace

TEST(state_vector, basis_and_norm) {
    StateVector s(3);
    EXPECT_EQ(s.size(), 8u);
    EXPECT_EQ(s[0], Amplitude(1));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1);
    StateVector b = StateVector::basis_state(3, 5);
    EXPECT_EQ(b[5], Amplitude(1));
    EXPECT_EQ(b.qubit_mask(0), 4u);
    EXPECT_THROW(amplitude(b, 8), std::out_of_range);
}

TEST(state_vector, single_qubit_on_msb_convention) {
    StateVector s(3);
    apply_single_qubit(s, Matrix2{0, 1, 1, 0}, 0);
    EXPECT_EQ(s[4], Amplitude(1));
    apply_single_qubit(s, Matrix2{0, 1, 1, 0}, 2);
    EXPECT_EQ(s[5], Amplitude(1));
}

TEST(state_vector, sqrt_x_squared_is_x) {
    std::mt19937_64 rng(5);
    StateVector a = random_state(5, rng);
    StateVector b = a;
    apply_single_qubit(a, gate_matrix(GateKind::SqrtX), 2);
    apply_single_qubit(a, gate_matrix(GateKind::SqrtX), 2);
    apply_single_qubit(b, Matrix2{0, 1, 1, 0}, 2);
    EXPECT_LT(max_abs_diff(a.amplitudes(), b.amplitudes()), 1e-14);
}

TEST(state_vector, cz_as_projector_sum) {
    // CZ = P0 (x) I + P1 (x) Z, checked by linearity on random states.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; trial++) {
        StateVector s = random_state(6, rng);
        StateVector lhs = s;
        apply_cz(lhs, 1, 4);
        StateVector b0 = s, b1 = s;
        apply_single_qubit(b0, gate_matrix(GateKind::Proj0), 1);
        apply_single_qubit(b1, gate_matrix(GateKind::Proj1), 1);
        apply_single_qubit(b1, gate_matrix(GateKind::PauliZ), 4);
        for (size_t i = 0; i < s.size(); i++) {
            EXPECT_LT(std::abs(lhs[i] - (b0[i] + b1[i])), 1e-15);
        }
    }
}

TEST(state_vector, fused_matches_sequential) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; trial++) {
        uint32_t n = 1 + static_cast<uint32_t>(rng() % 12);
        DiagonalLayerPlan plan = random_plan(n, rng, trial % 2 == 1);
        StateVector a = random_state(n, rng);
        StateVector b = a;
        apply_sequential(a, plan);
        apply_fused_diagonal(b, plan);
        EXPECT_LT(max_abs_diff(a.amplitudes(), b.amplitudes()), 1e-12) << "trial " << trial;
    }
}

TEST(state_vector, fused_pass_touches_each_amplitude_once) {
    std::mt19937_64 rng(3);
    for (uint32_t n : {4u, 9u, 12u}) {
        for (int k = 0; k < 3; k++) {
            DiagonalLayerPlan plan = random_plan(n, rng, true);
            std::vector<Amplitude> data(size_t{1} << n, 1.0);
            CountingStore store{data};
            FusedDiagonal::compile(plan, n).apply(store, 0, data.size());
            EXPECT_EQ(store.loads, data.size());
            EXPECT_EQ(store.stores, data.size());

            MemoryOpCounter counter;
            StateVector s(n);
            EngineOptions opts;
            opts.counter = &counter;
            apply_fused_diagonal(s, plan, opts);
            EXPECT_EQ(counter.reads.load(), s.size());
            EXPECT_EQ(counter.writes.load(), s.size());
            EXPECT_EQ(counter.fused_passes.load(), 1u);
        }
    }
}

TEST(state_vector, diagonal_plan_validation) {
    DiagonalLayerPlan p;
    p.t_qubits = {0};
    p.cz_edges = {Edge(0, 1)};
    EXPECT_THROW(p.validate(3), std::invalid_argument);
    p.cz_edges = {Edge(1, 2)};
    EXPECT_NO_THROW(p.validate(3));
    EXPECT_THROW(p.validate(2), std::invalid_argument);
}

TEST(state_vector, circuit_matches_reference) {
    for (uint64_t seed = 0; seed < 5; seed++) {
        Circuit c = generate_random_circuit({{3, 4}, 18, seed});
        auto ref = gridsplit_test::reference_state(c);
        for (bool fuse : {false, true}) {
            for (unsigned workers : {1u, 3u}) {
                StateVector s(c.num_qubits());
                EngineOptions opts;
                opts.fuse = fuse;
                opts.workers = workers;
                run_circuit(s, c, opts);
                EXPECT_LT(max_abs_diff(s.amplitudes(), ref), 1e-12);
                EXPECT_NEAR(s.norm_squared(), 1, 1e-12);
            }
        }
    }
}

TEST(state_vector, run_layers_splits) {
    Circuit c = generate_random_circuit({{3, 3}, 16, 4});
    StateVector whole(9), parts(9);
    run_circuit(whole, c);
    run_layers(parts, c, 1, 7, {});
    run_layers(parts, c, 8, 16, {});
    EXPECT_LT(max_abs_diff(whole.amplitudes(), parts.amplitudes()), 1e-15);
}

TEST(state_vector, binary_and_csv_dump) {
    std::mt19937_64 rng(1);
    StateVector s = random_state(4, rng);
    std::stringstream buf;
    write_state_binary(buf, s);
    EXPECT_EQ(buf.str().size(), 8 + 16 * 16u);
    StateVector back = read_state_binary(buf);
    EXPECT_EQ(max_abs_diff(s.amplitudes(), back.amplitudes()), 0);
    std::ostringstream csv;
    write_state_csv(csv, s);
    EXPECT_EQ(csv.str().rfind("index,re,im,prob\n0000,", 0), 0u);
    EXPECT_EQ(basis_label(5, 4), "0101");
}
