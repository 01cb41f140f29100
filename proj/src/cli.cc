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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridsplit/circuit.h"
#include "gridsplit/circuit_io.h"
#include "gridsplit/partition_executor.h"
#include "gridsplit/partition_planner.h"
#include "gridsplit/reconstruction.h"
#include "gridsplit/state_vector.h"
#include "gridsplit/stats.h"

using json = nlohmann::json;

namespace gridsplit {

namespace {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Where a circuit comes from: a file or generation flags.
struct CircuitSource {
    std::string path;
    uint32_t rows = 0;
    uint32_t cols = 0;
    uint32_t depth = 0;
    uint64_t seed = 0;

    void add_options(CLI::App *cmd) {
        auto *file = cmd->add_option("--circuit", path, "Circuit document (JSON)");
        auto *r = cmd->add_option("--rows", rows, "Grid rows (generate instead of --circuit)");
        auto *c = cmd->add_option("--cols", cols, "Grid columns");
        cmd->add_option("--depth", depth, "Circuit depth, including the Hadamard layer");
        cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
        file->excludes(r)->excludes(c);
    }

    Circuit load() const {
        if (!path.empty()) {
            return read_circuit_file(path);
        }
        if (rows == 0 || cols == 0) {
            throw ValidationError("give either --circuit or --rows/--cols/--depth");
        }
        return generate_random_circuit({{rows, cols}, depth, seed});
    }
};

void write_text(const std::string &path, const std::string &text, std::ostream &out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ValidationError("cannot write " + path);
    }
    f << text;
}

json counts_json(const GateCounts &c) {
    return {{"H", c.h}, {"SX", c.sqrt_x}, {"SY", c.sqrt_y}, {"T", c.t}, {"CZ", c.cz}, {"total", c.total()}};
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    uint32_t rows = 0;
    uint32_t cols = 0;
    uint32_t depth = 0;
    uint64_t seed = 0;
    std::string out = "-";
};

int cmd_gen(const GenArgs &a, std::ostream &out, std::ostream &err) {
    Circuit c = generate_random_circuit({{a.rows, a.cols}, a.depth, a.seed});
    write_text(a.out, serialize_circuit(c), out);
    GateCounts counts = gate_counts(c);
    err << "generated " << a.rows << "x" << a.cols << " depth " << a.depth << " seed " << a.seed << ": "
        << counts_json(counts).dump() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// plan

struct CostArgs {
    std::string preset;
    double nodes = 24576;
    double gate_time = 0;
    double bulk_gates = 0;

    void add_options(CLI::App *cmd) {
        cmd->add_option("--preset", preset, "Cost preset: 56q, 64q or 72q");
        cmd->add_option("--nodes", nodes, "Parallel units s")->capture_default_str();
        cmd->add_option("--gate-time", gate_time, "Seconds per gate t (overrides the preset)");
        cmd->add_option("--bulk-gates", bulk_gates, "Effective gates per layer beyond layer 3 (overrides the preset)");
    }

    /// Returns {bulk gates, gate time}; both 0 if neither preset nor overrides are set.
    std::pair<double, double> resolve() const {
        double bulk = 0, t = 0;
        if (!preset.empty()) {
            const CostPreset &p = find_preset(preset);
            bulk = p.bulk_gates;
            t = p.seconds_per_gate;
        }
        if (gate_time > 0) {
            t = gate_time;
        }
        if (bulk_gates > 0) {
            bulk = bulk_gates;
        }
        return {bulk, t};
    }
};

struct PlanArgs {
    CircuitSource source;
    CostArgs cost;
    uint32_t plan_depth = 0;
    uint32_t parts = 2;
    uint32_t device_qubits = 26;
    std::string json_out = "-";
    std::string csv_out;
};

int cmd_plan(const PlanArgs &a, std::ostream &out, std::ostream &err) {
    // Topology-only planning uses the CZ pattern; a concrete circuit uses its own edges.
    std::unique_ptr<Circuit> circuit;
    GridTopology topology;
    uint32_t depth = a.plan_depth;
    if (!a.source.path.empty() || (a.source.rows > 0 && a.source.depth > 0)) {
        circuit = std::make_unique<Circuit>(a.source.load());
        topology = circuit->topology;
        if (depth == 0) {
            depth = circuit->depth();
        }
    } else if (a.source.rows > 0 && a.source.cols > 0) {
        topology = {a.source.rows, a.source.cols};
    } else if (!a.cost.preset.empty()) {
        topology = find_preset(a.cost.preset).topology;
    } else {
        throw ValidationError("plan needs --circuit, --rows/--cols or --preset");
    }
    if (depth == 0) {
        throw ValidationError("plan needs --plan-depth (or a circuit with layers)");
    }
    topology.validate();

    auto layout = partition_layout(topology, a.parts);
    CutPlan plan = circuit ? plan_layout(*circuit, layout, depth) : plan_layout(topology, layout, depth);
    ComplexityReport report = complexity_report(plan, a.device_qubits);

    json doc;
    doc["rows"] = topology.rows;
    doc["cols"] = topology.cols;
    doc["depth"] = depth;
    doc["part_count"] = plan.parts.size();
    doc["parts"] = plan.parts;
    json sizes = json::array();
    for (const auto &p : plan.parts) {
        sizes.push_back(p.size());
    }
    doc["part_sizes"] = sizes;
    json cuts = json::array();
    for (const auto &g : plan.cut_gates) {
        cuts.push_back({g.layer, g.upper, g.lower});
    }
    doc["cut_gates"] = cuts;
    doc["cuts"] = plan.num_cuts();
    doc["copy_count"] = plan.num_cuts() < 64 ? json(plan.copy_count()) : json(std::ldexp(1.0, int(plan.num_cuts())));
    doc["half_circuits"] = report.half_circuits;
    doc["N_r"] = report.real_qubits;
    doc["N_m"] = report.device_qubits;
    doc["N_e"] = report.equivalent_qubits;
    doc["regime"] = std::string(regime_name(report.regime));
    if (plan.parts.size() == 2) {
        uint32_t checkpoint = default_checkpoint_layer(plan);
        doc["default_checkpoint_layer"] = checkpoint;
        doc["distinct_prefixes"] = distinct_prefix_count(plan, checkpoint);
    }
    auto [bulk, gate_time] = a.cost.resolve();
    if (bulk > 0 && gate_time > 0) {
        TimeEstimateParams params{layer_gate_counts(bulk, depth), report.half_circuits, gate_time, a.cost.nodes};
        doc["estimate_seconds"] = estimate_time(params);
        doc["estimate"] = format_duration(estimate_time(params));
    }
    write_text(a.json_out, doc.dump(2) + "\n", out);

    if (!a.csv_out.empty()) {
        std::ostringstream csv;
        csv << "depth,N_e,copies,estimate_seconds\n";
        auto sweep = sweep_complexity(topology, 1, depth, a.parts);
        for (const auto &row : sweep) {
            double estimate = 0;
            const double copies = std::ldexp(1.0, static_cast<int>(row.cuts));
            if (bulk > 0 && gate_time > 0) {
                estimate = estimate_time(
                    {layer_gate_counts(bulk, row.depth), copies * row.part_count, gate_time, a.cost.nodes});
            }
            csv << row.depth << "," << fmt_double(row.complexity_qubits) << "," << fmt_double(copies) << ","
                << fmt_double(estimate) << "\n";
        }
        write_text(a.csv_out, csv.str(), out);
    }
    err << "plan: " << plan.parts.size() << " parts, " << plan.num_cuts() << " cut gates, N_e = "
        << report.equivalent_qubits << " (" << regime_name(report.regime) << ")\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
    CostArgs cost;
    uint32_t depth = 0;
    double half_circuits = 0;
    std::string json_out;
};

int cmd_estimate(const EstimateArgs &a, std::ostream &out, std::ostream &) {
    if (a.cost.preset.empty() && (a.cost.gate_time <= 0 || a.cost.bulk_gates <= 0 || a.half_circuits <= 0)) {
        throw ValidationError("estimate needs --preset, or --gate-time, --bulk-gates and --half-circuits");
    }
    TimeEstimateParams params;
    if (!a.cost.preset.empty()) {
        params = preset_params(find_preset(a.cost.preset), a.depth, a.cost.nodes);
    }
    auto [bulk, gate_time] = a.cost.resolve();
    params.gates_per_layer = layer_gate_counts(bulk, a.depth);
    params.seconds_per_gate = gate_time;
    params.parallel_units = a.cost.nodes;
    if (a.half_circuits > 0) {
        params.half_circuits = a.half_circuits;
    }
    const double seconds = estimate_time(params);
    double gates = 0;
    for (double n : params.gates_per_layer) {
        gates += n;
    }
    out << (a.cost.preset.empty() ? std::string("custom") : a.cost.preset) << " depth " << a.depth << ": "
        << fmt_double(seconds) << " s (" << format_duration(seconds) << ")\n";
    if (!a.json_out.empty()) {
        json doc{
            {"preset", a.cost.preset},
            {"depth", a.depth},
            {"gates_per_half_circuit", gates},
            {"half_circuits", params.half_circuits},
            {"seconds_per_gate", params.seconds_per_gate},
            {"parallel_units", params.parallel_units},
            {"estimate_seconds", seconds},
            {"estimate", format_duration(seconds)},
        };
        write_text(a.json_out, doc.dump(2) + "\n", out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
    CircuitSource source;
    bool dense = false;
    bool all = false;
    uint64_t samples = 0;
    uint64_t sample_seed = 0;
    std::vector<uint64_t> indices;
    unsigned workers = 1;
    uint32_t checkpoint_layer = 0;
    bool checkpoint_auto = false;
    uint64_t cache_budget = uint64_t{1} << 30;
    uint32_t max_qubits = 26;
    uint32_t all_cap = 26;
    std::string out;
    std::string dump_copies;
    uint64_t progress_stride = 0;
};

int cmd_run(const RunArgs &a, std::ostream &out, std::ostream &err) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    Circuit circuit = a.source.load();
    const uint32_t n = circuit.num_qubits();
    const auto largest =
        a.dense ? size_t{n} : plan_bipartition(circuit, circuit.depth()).max_part_size();
    if (largest > a.max_qubits) {
        throw ResourceError(
            std::string(a.dense ? "dense state" : "largest part") + " has " + std::to_string(largest) +
            " qubits, above --max-qubits " + std::to_string(a.max_qubits));
    }
    if (n > 63) {
        throw ValidationError("run supports at most 63 qubits");
    }

    SampleSpec spec;
    if (!a.indices.empty()) {
        spec.mode = SampleSpec::Mode::Explicit;
        spec.indices = a.indices;
    } else if (a.samples > 0) {
        spec.mode = SampleSpec::Mode::SeededUniform;
        spec.count = a.samples;
        spec.seed = a.sample_seed;
    }
    std::vector<uint64_t> indices = resolve_samples(spec, n, a.all_cap);
    const bool all_mode = indices.size() == (uint64_t{1} << n);

    MemoryOpCounter counter;
    EngineOptions engine;
    engine.counter = &counter;
    uint64_t copies = 1;
    std::unique_ptr<AmplitudeAccumulator> acc;
    if (a.dense) {
        engine.workers = a.workers;
        StateVector state(n);
        run_circuit(state, circuit, engine);
        acc = std::make_unique<AmplitudeAccumulator>(AmplitudeAccumulator::from_dense(state, std::move(indices)));
    } else {
        CutPlan plan = plan_bipartition(circuit, circuit.depth());
        ExecutorOptions options;
        options.engine = engine;
        options.max_part_qubits = a.max_qubits;
        options.checkpoint_layer = a.checkpoint_auto ? default_checkpoint_layer(plan) : a.checkpoint_layer;
        options.cache_budget_bytes = a.cache_budget;
        options.warn = [&](const std::string &msg) {
            err << "warning: " << msg << "\n";
        };
        CopyRunner runner(circuit, plan, options);
        copies = runner.num_copies();
        err << "run: " << n << " qubits split " << runner.upper_qubits() << "+" << runner.lower_qubits() << ", "
            << plan.num_cuts() << " cut gates, " << copies << " copies";
        if (runner.cache_active()) {
            err << ", " << runner.cached_prefixes() << " cached prefixes after layer " << options.checkpoint_layer;
        }
        err << "\n";

        if (!a.dump_copies.empty()) {
            std::filesystem::create_directories(a.dump_copies);
            for_each_copy(runner, [&](CopyResult &&r) {
                const std::string stem = a.dump_copies + "/copy_" + std::to_string(r.assignment.bits);
                std::ofstream up(stem + "_upper.bin", std::ios::binary);
                write_state_binary(up, r.upper);
                std::ofstream lo(stem + "_lower.bin", std::ios::binary);
                write_state_binary(lo, r.lower);
            });
        }

        ReconstructionOptions rec;
        rec.workers = a.workers;
        rec.progress_stride = a.progress_stride;
        rec.progress = [&](uint64_t done, uint64_t total) {
            err << "progress: " << done << "/" << total << " copies\n";
        };
        acc = std::make_unique<AmplitudeAccumulator>(reconstruct(runner, std::move(indices), rec));
    }

    double total_prob = 0;
    for (const auto &[_, p] : acc->probabilities()) {
        total_prob += p;
    }
    if (a.out.empty()) {
        throw ValidationError("run needs --out");
    }
    std::ostringstream csv;
    write_amplitude_csv(csv, *acc);
    write_text(a.out, csv.str(), out);

    const double seconds = std::chrono::duration<double>(clock::now() - start).count();
    err << "summary: copies=" << copies << " samples=" << acc->indices().size() << " sum_prob=" << fmt_double(total_prob)
        << " wall_seconds=" << seconds << " fused_passes=" << counter.fused_passes.load()
        << " fused_reads=" << counter.reads.load() << " fused_writes=" << counter.writes.load() << "\n";

    if (all_mode ? std::abs(total_prob - 1) > 1e-6 : total_prob > 1 + 1e-6) {
        throw NumericError("norm drift: total probability " + fmt_double(total_prob));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
    std::string amps;
    HistogramOptions hist;
    std::string hist_out;
    std::string report_out;
};

int cmd_analyze(const AnalyzeArgs &a, std::ostream &out, std::ostream &err) {
    std::ifstream in(a.amps);
    if (!in) {
        throw ValidationError("cannot open " + a.amps);
    }
    AmplitudeTable table;
    try {
        table = read_amplitude_csv(in);
    } catch (const std::runtime_error &ex) {
        throw ValidationError(ex.what());
    }
    LogProbSample sample = log_transform(table.probabilities, table.num_qubits);
    FitReport report = histogram_and_fit(sample, a.hist);

    if (!a.hist_out.empty()) {
        std::ostringstream csv;
        csv << "z_mid,empirical_density,theory_density\n";
        for (const auto &b : report.bins) {
            csv << fmt_double(b.z_mid) << "," << fmt_double(b.empirical_density) << "," << fmt_double(b.theory_density)
                << "\n";
        }
        write_text(a.hist_out, csv.str(), out);
    }
    json doc{
        {"sample_count", report.sample_count},
        {"zero_count", report.zero_count},
        {"ks", report.ks.has_value() ? json(*report.ks) : json(nullptr)},
        {"alpha", report.alpha},
        {"N", report.dimension},
        {"num_qubits", report.num_qubits},
        {"bins", report.bins.size()},
        {"ks_threshold", a.hist.ks_threshold},
        {"porter_thomas_consistent", report.porter_thomas_consistent},
    };
    if (!a.report_out.empty()) {
        write_text(a.report_out, doc.dump(2) + "\n", out);
    }
    err << "analyze: " << report.sample_count << " samples, " << report.zero_count << " zeros, KS = "
        << (report.ks ? fmt_double(*report.ks) : std::string("n/a"))
        << (report.porter_thomas_consistent ? " (consistent with Porter-Thomas)" : " (NOT consistent with Porter-Thomas)")
        << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"gridsplit: partitioned state-vector simulation of random grid circuits"};
    app.require_subcommand(1);

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a universal random circuit");
    gen_cmd->add_option("--rows", gen.rows, "Grid rows")->required();
    gen_cmd->add_option("--cols", gen.cols, "Grid columns")->required();
    gen_cmd->add_option("--depth", gen.depth, "Depth, including the Hadamard layer")->required();
    gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output file ('-' for stdout)")->capture_default_str();

    PlanArgs plan;
    auto *plan_cmd = app.add_subcommand("plan", "Report cuts, copies, equivalent qubits and cost for a partition");
    plan.source.add_options(plan_cmd);
    plan.cost.add_options(plan_cmd);
    plan_cmd->add_option("--plan-depth", plan.plan_depth, "Depth to plan for (default: circuit depth)");
    plan_cmd->add_option("--parts", plan.parts, "Number of parts: 2, 3 or 4")->capture_default_str();
    plan_cmd->add_option("--device-qubits", plan.device_qubits, "N_m, largest directly simulable qubit count")
        ->capture_default_str();
    plan_cmd->add_option("--json", plan.json_out, "JSON report output ('-' for stdout)")->capture_default_str();
    plan_cmd->add_option("--csv", plan.csv_out, "Per-depth CSV: depth,N_e,copies,estimate_seconds");

    EstimateArgs est;
    auto *est_cmd = app.add_subcommand("estimate", "Runtime estimate: sum(n_i) * m * t / s");
    est.cost.add_options(est_cmd);
    est_cmd->add_option("--depth", est.depth, "Circuit depth")->required();
    est_cmd->add_option("--half-circuits", est.half_circuits, "m (overrides the count derived from the preset cut)");
    est_cmd->add_option("--json", est.json_out, "JSON report output ('-' for stdout)");

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Simulate and write amplitudes of sampled basis states");
    run.source.add_options(run_cmd);
    run_cmd->add_flag("--dense", run.dense, "Simulate the whole circuit without partitioning");
    auto *all_opt = run_cmd->add_flag("--all", run.all, "Extract every amplitude (default when no samples are given)");
    auto *samples_opt = run_cmd->add_option("--samples", run.samples, "Number of uniformly drawn distinct indices");
    run_cmd->add_option("--sample-seed", run.sample_seed, "Seed for --samples")->capture_default_str();
    auto *indices_opt =
        run_cmd->add_option("--indices", run.indices, "Explicit basis indices (decimal)")->delimiter(',');
    all_opt->excludes(samples_opt)->excludes(indices_opt);
    samples_opt->excludes(indices_opt);
    run_cmd->add_option("--workers", run.workers, "Copy-execution worker threads")->capture_default_str();
    auto *cp = run_cmd->add_option("--checkpoint-layer", run.checkpoint_layer, "Cache part states after this layer");
    auto *cp_auto = run_cmd->add_flag(
        "--checkpoint-auto", run.checkpoint_auto, "Checkpoint before the last block of cut layers");
    cp->excludes(cp_auto);
    run_cmd->add_option("--cache-budget", run.cache_budget, "Checkpoint cache budget in bytes")->capture_default_str();
    run_cmd->add_option("--max-qubits", run.max_qubits, "Largest part (or dense state) to simulate")
        ->capture_default_str();
    run_cmd->add_option("--all-cap", run.all_cap, "Largest qubit count for --all")->capture_default_str();
    run_cmd->add_option("--out", run.out, "Amplitude CSV output ('-' for stdout)")->required();
    run_cmd->add_option("--dump-copies", run.dump_copies, "Directory for per-copy binary part states");
    run_cmd->add_option("--progress-stride", run.progress_stride, "Log progress every this many copies");

    AnalyzeArgs analyze;
    auto *an_cmd = app.add_subcommand("analyze", "Histogram and KS fit of log-probabilities against the Gumbel law");
    an_cmd->add_option("--amps", analyze.amps, "Amplitude CSV")->required();
    an_cmd->add_option("--bins", analyze.hist.bins, "Histogram bins")->capture_default_str();
    an_cmd->add_option("--z-min", analyze.hist.z_min, "Histogram lower edge")->capture_default_str();
    an_cmd->add_option("--z-max", analyze.hist.z_max, "Histogram upper edge")->capture_default_str();
    an_cmd->add_option("--alpha", analyze.hist.params.alpha, "Gumbel alpha")->capture_default_str();
    an_cmd->add_option("--ks-threshold", analyze.hist.ks_threshold, "KS threshold")->capture_default_str();
    an_cmd->add_option("--hist", analyze.hist_out, "Histogram CSV output: z_mid,empirical_density,theory_density");
    an_cmd->add_option("--report", analyze.report_out, "Fit report JSON output");

    std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << (app.get_subcommands().empty() ? app.help("", CLI::AppFormatMode::All) : app.help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitValidation;
    }

    try {
        if (gen_cmd->parsed()) {
            return cmd_gen(gen, out, err);
        }
        if (plan_cmd->parsed()) {
            return cmd_plan(plan, out, err);
        }
        if (est_cmd->parsed()) {
            return cmd_estimate(est, out, err);
        }
        if (run_cmd->parsed()) {
            return cmd_run(run, out, err);
        }
        if (an_cmd->parsed()) {
            return cmd_analyze(analyze, out, err);
        }
    } catch (const ResourceError &ex) {
        err << "resource error: " << ex.what() << "\n";
        return kExitResource;
    } catch (const std::length_error &ex) {
        err << "resource error: " << ex.what() << "\n";
        return kExitResource;
    } catch (const std::bad_alloc &) {
        err << "resource error: out of memory\n";
        return kExitResource;
    } catch (const NumericError &ex) {
        err << "numeric error: " << ex.what() << "\n";
        return kExitNumeric;
    } catch (const CircuitParseError &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace gridsplit
