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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

using json = nlohmann::json;

namespace gridsplit {

namespace {

void line_and_column(std::string_view text, size_t byte, size_t &line, size_t &column) {
    line = 1;
    column = 1;
    for (size_t k = 0; k < byte && k < text.size(); k++) {
        if (text[k] == '\n') {
            line++;
            column = 1;
        } else {
            column++;
        }
    }
}

[[noreturn]] void schema_error(const std::string &msg) {
    throw CircuitParseError("circuit document: " + msg, 0, 0);
}

GateKind parse_gate_name(const std::string &name, size_t layer) {
    if (name == "H") {
        return GateKind::H;
    }
    if (name == "SX") {
        return GateKind::SqrtX;
    }
    if (name == "SY") {
        return GateKind::SqrtY;
    }
    if (name == "T") {
        return GateKind::T;
    }
    schema_error("layer " + std::to_string(layer) + ": unknown gate name '" + name + "'");
}

uint32_t parse_qubit(const json &v, size_t layer) {
    if (!v.is_number_unsigned()) {
        schema_error("layer " + std::to_string(layer) + ": qubit index must be a non-negative integer");
    }
    return v.get<uint32_t>();
}

uint32_t parse_dim(const json &doc, const char *key) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned() || doc[key].get<uint64_t>() == 0) {
        schema_error(std::string("field '") + key + "' must be a positive integer");
    }
    return doc[key].get<uint32_t>();
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &ex) {
        size_t line, column;
        line_and_column(text, ex.byte == 0 ? 0 : ex.byte - 1, line, column);
        throw CircuitParseError(
            "circuit document: syntax error at line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + ex.what(),
            line,
            column);
    }
    if (!doc.is_object()) {
        schema_error("top level must be an object");
    }

    Circuit circuit;
    circuit.topology.rows = parse_dim(doc, "rows");
    circuit.topology.cols = parse_dim(doc, "cols");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            schema_error("field 'seed' must be a non-negative integer");
        }
        circuit.seed = doc["seed"].get<uint64_t>();
    }
    if (!doc.contains("layers") || !doc["layers"].is_array()) {
        schema_error("field 'layers' must be an array");
    }

    uint32_t t = 0;
    for (const auto &entry : doc["layers"]) {
        t++;
        if (!entry.is_object()) {
            schema_error("layer " + std::to_string(t) + " must be an object");
        }
        Layer layer;
        layer.index = t;
        if (entry.contains("singles")) {
            if (!entry["singles"].is_array()) {
                schema_error("layer " + std::to_string(t) + ": 'singles' must be an array");
            }
            for (const auto &g : entry["singles"]) {
                if (!g.is_array() || g.size() != 2 || !g[1].is_string()) {
                    schema_error("layer " + std::to_string(t) + ": single gate must be [qubit, name]");
                }
                layer.singles.push_back({parse_qubit(g[0], t), parse_gate_name(g[1].get<std::string>(), t)});
            }
        }
        if (entry.contains("cz")) {
            if (!entry["cz"].is_array()) {
                schema_error("layer " + std::to_string(t) + ": 'cz' must be an array");
            }
            for (const auto &e : entry["cz"]) {
                if (!e.is_array() || e.size() != 2) {
                    schema_error("layer " + std::to_string(t) + ": CZ must be [a, b]");
                }
                layer.edges.emplace_back(parse_qubit(e[0], t), parse_qubit(e[1], t));
            }
        }
        for (const auto &[key, _] : entry.items()) {
            if (key != "singles" && key != "cz") {
                schema_error("layer " + std::to_string(t) + ": unknown field '" + key + "'");
            }
        }
        std::sort(layer.singles.begin(), layer.singles.end(), [](const SingleGate &x, const SingleGate &y) {
            return x.qubit < y.qubit;
        });
        std::sort(layer.edges.begin(), layer.edges.end());
        circuit.layers.push_back(std::move(layer));
    }
    circuit.validate();
    return circuit;
}

std::string serialize_circuit(const Circuit &circuit) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"rows\": " << circuit.topology.rows << ",\n";
    out << "  \"cols\": " << circuit.topology.cols << ",\n";
    if (circuit.seed.has_value()) {
        out << "  \"seed\": " << *circuit.seed << ",\n";
    }
    out << "  \"layers\": [";
    for (size_t k = 0; k < circuit.layers.size(); k++) {
        const Layer &layer = circuit.layers[k];
        std::vector<SingleGate> singles = layer.singles;
        std::sort(singles.begin(), singles.end(), [](const SingleGate &x, const SingleGate &y) {
            return x.qubit < y.qubit;
        });
        std::vector<Edge> edges = layer.edges;
        std::sort(edges.begin(), edges.end());

        json entry = json::object();
        entry["singles"] = json::array();
        for (const auto &g : singles) {
            switch (g.kind) {
                case GateKind::Identity:
                    continue;
                case GateKind::H:
                case GateKind::SqrtX:
                case GateKind::SqrtY:
                case GateKind::T:
                    entry["singles"].push_back(json::array({g.qubit, std::string(gate_name(g.kind))}));
                    break;
                default:
                    throw std::invalid_argument(
                        "gate " + std::string(gate_name(g.kind)) + " cannot be written to a circuit document");
            }
        }
        entry["cz"] = json::array();
        for (const auto &e : edges) {
            entry["cz"].push_back(json::array({e.a, e.b}));
        }
        out << (k == 0 ? "\n    " : ",\n    ") << entry.dump();
    }
    out << (circuit.layers.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
}

Circuit read_circuit_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open circuit file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

void write_circuit_file(const std::string &path, const Circuit &circuit) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write circuit file: " + path);
    }
    out << serialize_circuit(circuit);
}

}  // namespace gridsplit
