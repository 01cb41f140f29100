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

#include "gridsplit/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gridsplit/circuit_io.h"
#include "gridsplit/reconstruction.h"

using namespace gridsplit;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "gridsplit");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("gridsplit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override {
        fs::remove_all(dir);
    }
    std::string path(const std::string &name) const {
        return (dir / name).string();
    }
    fs::path dir;
};

}  // namespace

TEST_F(CliTest, gen_is_deterministic) {
    ASSERT_EQ(cli({"gen", "--rows", "6", "--cols", "7", "--depth", "22", "--seed", "7", "--out", path("a.json")}).code, 0);
    ASSERT_EQ(cli({"gen", "--rows", "6", "--cols", "7", "--depth", "22", "--seed", "7", "--out", path("b.json")}).code, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    EXPECT_EQ(gate_counts(read_circuit_file(path("a.json"))).cz, 192u);
    Result one = cli({"gen", "--rows", "2", "--cols", "2", "--depth", "1"});
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(gate_counts(parse_circuit(one.out)).total(), 4u);
}

TEST_F(CliTest, validation_errors) {
    EXPECT_EQ(cli({}).code, kExitValidation);
    EXPECT_EQ(cli({"gen", "--rows", "0", "--cols", "2", "--depth", "3"}).code, kExitValidation);
    EXPECT_EQ(cli({"gen", "--rows", "x"}).code, kExitValidation);
    EXPECT_EQ(cli({"estimate", "--preset", "99q", "--depth", "22"}).code, kExitValidation);
    std::ofstream(path("bad.json")) << "{\"rows\": 2,";
    Result r = cli({"run", "--circuit", path("bad.json"), "--out", path("o.csv")});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("line"), std::string::npos);
    EXPECT_EQ(cli({"analyze", "--amps", path("missing.csv")}).code, kExitValidation);
    EXPECT_EQ(cli({"run", "--rows", "2", "--cols", "2", "--depth", "3", "--samples", "2", "--all", "--out", "-"}).code,
              kExitValidation);
}

TEST_F(CliTest, help) {
    Result r = cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--checkpoint-layer"), std::string::npos);
}

TEST_F(CliTest, estimate) {
    Result r = cli({"estimate", "--preset", "56q", "--depth", "23", "--nodes", "24576"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("7.33 min"), std::string::npos);
    EXPECT_NE(cli({"estimate", "--preset", "72q", "--depth", "23"}).out.find("15.6 h"), std::string::npos);
    Result custom = cli({"estimate", "--gate-time", "1", "--bulk-gates", "1", "--half-circuits", "2", "--depth", "4",
                         "--nodes", "1"});
    EXPECT_EQ(custom.code, 0);
    EXPECT_NE(custom.out.find(" 12 s"), std::string::npos);
}

TEST_F(CliTest, plan_reports) {
    Result r = cli({"plan", "--preset", "64q", "--plan-depth", "22", "--csv", path("p.csv")});
    ASSERT_EQ(r.code, 0);
    auto doc = r.out;
    EXPECT_NE(doc.find("\"N_e\": 49"), std::string::npos);
    EXPECT_NE(doc.find("\"default_checkpoint_layer\": 14"), std::string::npos);
    EXPECT_NE(doc.find("\"distinct_prefixes\": 256"), std::string::npos);
    std::string csv = slurp(path("p.csv"));
    EXPECT_EQ(csv.rfind("depth,N_e,copies,estimate_seconds\n1,33,1,", 0), 0u);
    Result three = cli({"plan", "--rows", "8", "--cols", "8", "--plan-depth", "22", "--parts", "3"});
    EXPECT_NE(three.out.find("\"cuts\": 39"), std::string::npos);
}

TEST_F(CliTest, run_partitioned_matches_dense) {
    ASSERT_EQ(cli({"gen", "--rows", "4", "--cols", "2", "--depth", "8", "--seed", "1", "--out", path("c.json")}).code, 0);
    ASSERT_EQ(cli({"run", "--circuit", path("c.json"), "--out", path("p.csv")}).code, 0);
    ASSERT_EQ(cli({"run", "--circuit", path("c.json"), "--dense", "--out", path("d.csv")}).code, 0);
    std::ifstream pa(path("p.csv")), da(path("d.csv"));
    AmplitudeTable p = read_amplitude_csv(pa), d = read_amplitude_csv(da);
    ASSERT_EQ(p.indices.size(), 256u);
    for (size_t k = 0; k < 256; k++) EXPECT_LT(std::abs(p.amplitudes[k] - d.amplitudes[k]), 1e-10);
}

TEST_F(CliTest, run_samples_repeatable) {
    std::vector<std::string> args{"run", "--rows", "3", "--cols", "3", "--depth", "12", "--seed", "2",
                                  "--samples", "16", "--sample-seed", "3", "--out"};
    auto a = args, b = args;
    a.push_back(path("a.csv"));
    b.push_back(path("b.csv"));
    ASSERT_EQ(cli(a).code, 0);
    ASSERT_EQ(cli(b).code, 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    std::ifstream in(path("a.csv"));
    EXPECT_EQ(read_amplitude_csv(in).indices.size(), 16u);
}

TEST_F(CliTest, run_options) {
    Result r = cli({"run", "--rows", "4", "--cols", "4", "--depth", "16", "--checkpoint-auto", "--workers", "3",
                    "--indices", "1,7,100", "--dump-copies", path("copies"), "--progress-stride", "8", "--out", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("cached prefixes"), std::string::npos);
    EXPECT_NE(r.err.find("progress:"), std::string::npos);
    EXPECT_NE(r.err.find("fused_reads="), std::string::npos);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
    EXPECT_TRUE(fs::exists(dir / "copies" / "copy_0_upper.bin"));
}

TEST_F(CliTest, resource_errors) {
    Result r = cli({"run", "--rows", "5", "--cols", "4", "--depth", "10", "--max-qubits", "10", "--out", "-"});
    EXPECT_EQ(r.code, kExitResource);
    EXPECT_NE(r.err.find("12 qubits"), std::string::npos);
    EXPECT_EQ(cli({"run", "--rows", "5", "--cols", "4", "--depth", "4", "--dense", "--max-qubits", "16", "--out", "-"})
                  .code,
              kExitResource);
}

TEST_F(CliTest, analyze_outputs) {
    ASSERT_EQ(cli({"run", "--rows", "3", "--cols", "3", "--depth", "10", "--out", path("a.csv")}).code, 0);
    Result r = cli({"analyze", "--amps", path("a.csv"), "--bins", "20", "--hist", path("h.csv"), "--report", "-"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"sample_count\""), std::string::npos);
    EXPECT_NE(r.out.find("\"ks\": null"), std::string::npos);
    std::string hist = slurp(path("h.csv"));
    EXPECT_EQ(hist.rfind("z_mid,empirical_density,theory_density\n", 0), 0u);
    EXPECT_EQ(std::count(hist.begin(), hist.end(), '\n'), 21);
}
