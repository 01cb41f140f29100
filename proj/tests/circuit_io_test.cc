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

#include "gridsplit/circuit_io.h"

#include <gtest/gtest.h>

#include <filesystem>

using namespace gridsplit;

TEST(circuit_io, round_trip) {
    for (uint64_t seed : {1ull, 2ull}) {
        Circuit c = generate_random_circuit({{5, 4}, 24, seed});
        std::string text = serialize_circuit(c);
        EXPECT_EQ(parse_circuit(text), c);
        EXPECT_EQ(serialize_circuit(parse_circuit(text)), text);
    }
}

TEST(circuit_io, minimal_document) {
    Circuit c = parse_circuit(R"({"rows": 1, "cols": 2, "layers": [{"singles": [[1, "H"], [0, "T"]]}, {"cz": [[1, 0]]}]})");
    EXPECT_EQ(c.num_qubits(), 2u);
    ASSERT_EQ(c.depth(), 2u);
    EXPECT_FALSE(c.seed.has_value());
    EXPECT_EQ(c.layers[0].singles[0].qubit, 0u);
    EXPECT_EQ(c.layers[0].singles[0].kind, GateKind::T);
    EXPECT_EQ(c.layers[1].edges[0], Edge(0, 1));
    EXPECT_EQ(c.layers[1].index, 2u);
}

TEST(circuit_io, syntax_error_has_position) {
    try {
        parse_circuit("{\"rows\": 2,\n  \"cols\": ]}");
        FAIL();
    } catch (const CircuitParseError &e) {
        EXPECT_EQ(e.line, 2u);
        EXPECT_GT(e.column, 0u);
    }
}

TEST(circuit_io, schema_errors) {
    EXPECT_THROW(parse_circuit(R"({"rows": 2, "layers": []})"), CircuitParseError);
    EXPECT_THROW(parse_circuit(R"({"rows": 2, "cols": 2, "layers": [{"singles": [[0, "X"]]}]})"), CircuitParseError);
    EXPECT_THROW(parse_circuit(R"({"rows": 2, "cols": 2, "layers": [{"gates": []}]})"), CircuitParseError);
    EXPECT_THROW(
        parse_circuit(R"({"rows": 2, "cols": 2, "layers": [{"singles": [[0, "H"]], "cz": [[0, 1]]}]})"),
        std::invalid_argument);
    EXPECT_THROW(parse_circuit(R"({"rows": 2, "cols": 2, "layers": [{"cz": [[0, 9]]}]})"), std::invalid_argument);
}

TEST(circuit_io, file_round_trip) {
    auto path = std::filesystem::temp_directory_path() / "gridsplit_io_test.json";
    Circuit c = generate_random_circuit({{4, 2}, 8, 1});
    write_circuit_file(path.string(), c);
    EXPECT_EQ(read_circuit_file(path.string()), c);
    std::filesystem::remove(path);
    EXPECT_ANY_THROW(read_circuit_file(path.string()));
}
