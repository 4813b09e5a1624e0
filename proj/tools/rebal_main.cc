// Copyright 2026 The rebal Authors
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

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rebal/error.h"
#include "rebal/harness.h"

namespace {

using namespace rebal;

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(sep, start);
        if (end == std::string::npos) {
            end = text.size();
        }
        if (end > start) {
            out.push_back(text.substr(start, end - start));
        }
        start = end + 1;
    }
    return out;
}

double to_double(const std::string &s) {
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != s.size() || s.empty()) {
        throw ValidationError("not a number: '" + s + "'");
    }
    return v;
}

// "eps01:eps10,eps01:eps10,..." with qubit 0 first.
std::vector<QubitNoiseParams> parse_params(const std::string &text) {
    std::vector<QubitNoiseParams> out;
    for (const auto &item : split(text, ',')) {
        auto parts = split(item, ':');
        if (parts.size() != 2) {
            throw ValidationError("noise parameters must look like eps01:eps10, got '" + item + "'");
        }
        out.push_back(QubitNoiseParams{to_double(parts[0]), to_double(parts[1])});
    }
    return out;
}

struct RunFlags {
    std::string config;
    std::string experiment;
    std::string calibration_file;
    std::string tensor_params;
    int64_t shots = 0;
    int64_t repetitions = 0;
    std::string strategies;
    double pilot_fraction = 0;
    std::string unfold_method;
    int ibu_iterations = 0;
    double max_condition = 0;
    uint64_t seed = 0;
    std::string output_dir;
    int64_t grover_iterations = 0;
    uint64_t grover_target = 0;
    double gaussian_sigma = 0;
    std::string gaussian_mus;
    AppendixAConfig appendix_a;
    size_t threads = 0;
    bool fast = false;
};

void add_appendix_a_flags(CLI::App *cmd, AppendixAConfig &a) {
    cmd->add_option("--q0", a.q0, "Readout error of qubit 0 (two-qubit model)");
    cmd->add_option("--q1", a.q1, "Readout error of qubit 1 (two-qubit model)");
    cmd->add_option("--n00", a.n00, "True count of |00>");
    cmd->add_option("--n01", a.n01, "True count of |01> (qubit 0 reads 0, qubit 1 reads 1)");
    cmd->add_option("--n10", a.n10, "True count of |10> (qubit 0 reads 1, qubit 1 reads 0)");
    cmd->add_option("--n11", a.n11, "True count of |11>");
    cmd->add_option("--trials", a.trials, "Monte Carlo trials");
}

void apply_appendix_a_flags(CLI::App *cmd, const AppendixAConfig &from, AppendixAConfig &to) {
    if (cmd->count("--q0")) to.q0 = from.q0;
    if (cmd->count("--q1")) to.q1 = from.q1;
    if (cmd->count("--n00")) to.n00 = from.n00;
    if (cmd->count("--n01")) to.n01 = from.n01;
    if (cmd->count("--n10")) to.n10 = from.n10;
    if (cmd->count("--n11")) to.n11 = from.n11;
    if (cmd->count("--trials")) to.trials = from.trials;
}

ExperimentConfig build_config(CLI::App *cmd, const RunFlags &f) {
    ExperimentConfig c;
    if (!f.config.empty()) {
        c = ExperimentConfig::from_json_file(f.config);
    }
    if (cmd->count("--experiment")) c.experiment = parse_experiment(f.experiment);
    if (cmd->count("--calibration-file")) {
        c.calibration_file = f.calibration_file;
        c.tensor_params.clear();
    }
    if (cmd->count("--tensor-params")) c.tensor_params = parse_params(f.tensor_params);
    if (cmd->count("--shots")) c.shots = f.shots;
    if (cmd->count("--repetitions")) c.repetitions = f.repetitions;
    if (f.fast) c.repetitions = 100;
    if (cmd->count("--strategies")) {
        c.strategies.clear();
        for (const auto &s : split(f.strategies, ',')) {
            c.strategies.push_back(parse_strategy(s));
        }
    }
    if (cmd->count("--pilot-fraction")) c.pilot_fraction = f.pilot_fraction;
    if (cmd->count("--unfold")) c.unfold.method = parse_unfold_method(f.unfold_method);
    if (cmd->count("--ibu-iterations")) c.unfold.ibu_iterations = f.ibu_iterations;
    if (cmd->count("--max-condition")) c.unfold.max_condition = f.max_condition;
    if (cmd->count("--seed")) c.seed = f.seed;
    if (cmd->count("--output-dir")) c.output_dir = f.output_dir;
    if (cmd->count("--grover-iterations")) c.grover_iterations = f.grover_iterations;
    if (cmd->count("--grover-target")) c.grover_target = f.grover_target;
    if (cmd->count("--gaussian-sigma")) c.gaussian_sigma = f.gaussian_sigma;
    if (cmd->count("--gaussian-mus")) {
        c.gaussian_mus.clear();
        for (const auto &s : split(f.gaussian_mus, ',')) {
            c.gaussian_mus.push_back(to_double(s));
        }
    }
    apply_appendix_a_flags(cmd, f.appendix_a, c.appendix_a);
    if (cmd->count("--threads")) c.threads = f.threads;

    if (c.tensor_params.empty() && c.calibration_file.empty()) {
        c.calibration_file = default_calibration_path();
    }
    return c;
}

int run_command(CLI::App *cmd, const RunFlags &flags, bool dry_run) {
    auto config = build_config(cmd, flags);
    config.validate();
    if (dry_run) {
        fmt::print("{}", config.to_json());
        return 0;
    }
    auto report = cmd_run(config);
    for (const auto &row : report.rows) {
        fmt::print("{:<15} {:>8} {:<12} mean={:<14.6g} std={:<12.6g} se(std)={:.3g}\n", row.experiment,
                   row.mu ? fmt::format("{:.2f}", *row.mu) : "", row.result.strategy, row.result.mean,
                   row.result.std, row.result.std_err_of_std);
    }
    for (const auto &file : report.files) {
        fmt::print("wrote {}\n", file.string());
    }
    fmt::print("config hash {}\n", report.config_hash);
    return 0;
}

int calibrate_command(const CalibrateOptions &opts_in, const std::string &params, const std::string &eps10_range,
                      const std::string &eps01_range, CLI::App *cmd) {
    CalibrateOptions opts = opts_in;
    if (cmd->count("--params")) {
        opts.params = parse_params(params);
    }
    auto range = [](const std::string &text, double &lo, double &hi) {
        auto parts = split(text, ':');
        if (parts.size() != 2) {
            throw ValidationError("ranges must look like lo:hi, got '" + text + "'");
        }
        lo = to_double(parts[0]);
        hi = to_double(parts[1]);
    };
    if (cmd->count("--eps10-range")) range(eps10_range, opts.synthetic.eps10_min, opts.synthetic.eps10_max);
    if (cmd->count("--eps01-range")) range(eps01_range, opts.synthetic.eps01_min, opts.synthetic.eps01_max);

    auto report = cmd_calibrate(opts);
    fmt::print("zeros  mean_correct_probability\n");
    for (const auto &[zeros, p] : report.diagnostics) {
        fmt::print("{:>5}  {:.6f}\n", zeros, p);
    }
    for (const auto &file : report.files) {
        fmt::print("wrote {}\n", file.string());
    }
    return 0;
}

int appendix_a_command(CLI::App *cmd, const std::string &config_path, const AppendixAConfig &flags, uint64_t seed,
                       const std::string &output) {
    AppendixAConfig a;
    uint64_t s = 1;
    if (!config_path.empty()) {
        auto c = ExperimentConfig::from_json_file(config_path);
        a = c.appendix_a;
        s = c.seed;
    }
    apply_appendix_a_flags(cmd, flags, a);
    if (cmd->count("--seed")) s = seed;
    a.model().validate();
    auto rows = cmd_appendix_a(a, s, output);
    fmt::print("{:<5} {:>10} {:>14} {:>14} {:>14} {:>10} {:>10}  {}\n", "state", "true", "as_printed", "mirrored",
               "monte_carlo", "boot_err", "tolerance", "printed/mirrored");
    for (const auto &r : rows) {
        fmt::print("{:<5} {:>10g} {:>14.2f} {:>14.2f} {:>14.2f} {:>10.2f} {:>10.2f}  {}/{}\n", r.state, r.true_count,
                   r.analytic_as_printed, r.analytic_mirrored, r.monte_carlo, r.bootstrap_error, r.tolerance,
                   r.pass_as_printed ? "pass" : "fail", r.pass_mirrored ? "pass" : "fail");
    }
    fmt::print("wrote {}\n", output);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Readout rebalancing simulator and benchmark harness"};
    app.require_subcommand(1);

    RunFlags rf;
    bool dry_run = false;
    auto *run = app.add_subcommand("run", "Run an experiment ensemble across strategies");
    run->add_option("--config", rf.config, "JSON config file; flags override its fields")->check(CLI::ExistingFile);
    run->add_option("--experiment", rf.experiment, "inverted_w, grover, gaussian_sweep or appendix_a");
    run->add_option("--calibration-file", rf.calibration_file, "Response matrix JSON");
    run->add_option("--tensor-params", rf.tensor_params, "Per-qubit eps01:eps10 list, qubit 0 first");
    run->add_option("--shots", rf.shots, "Shots per run");
    run->add_option("--repetitions", rf.repetitions, "Runs per ensemble");
    run->add_flag("--fast", rf.fast, "Use 100 repetitions");
    run->add_option("--strategies", rf.strategies, "Comma list of nominal, symmetrized, rebalanced");
    run->add_option("--pilot-fraction", rf.pilot_fraction, "Share of shots spent on the rebalancing pilot");
    run->add_option("--unfold", rf.unfold_method, "ibu or matrix_inversion");
    run->add_option("--ibu-iterations", rf.ibu_iterations, "IBU iteration count");
    run->add_option("--max-condition", rf.max_condition, "Largest condition number accepted by matrix inversion");
    run->add_option("--seed", rf.seed, "Base RNG seed");
    run->add_option("--output-dir", rf.output_dir, "Directory for CSV and manifest output");
    run->add_option("--grover-iterations", rf.grover_iterations, "Grover iterations");
    run->add_option("--grover-target", rf.grover_target, "Marked state index (default all ones)");
    run->add_option("--gaussian-sigma", rf.gaussian_sigma, "Width of the discretized Gaussian");
    run->add_option("--gaussian-mus", rf.gaussian_mus, "Comma list of Gaussian means");
    add_appendix_a_flags(run, rf.appendix_a);
    run->add_option("--threads", rf.threads, "Worker threads (0 = hardware concurrency)");
    run->add_flag("--dry-run", dry_run, "Print the resolved config and exit");

    CalibrateOptions co;
    std::string params_text, eps10_range, eps01_range, input, output, diagnostics, params_out;
    uint64_t synthetic_seed = 0;
    auto *cal = app.add_subcommand("calibrate", "Write a response matrix and its diagnostics table");
    cal->add_option("--params", params_text, "Per-qubit eps01:eps10 list, qubit 0 first");
    cal->add_option("--synthetic-seed", synthetic_seed, "Draw per-qubit parameters from this seed");
    cal->add_option("--n-qubits", co.synthetic.n_qubits, "Register width for synthetic draws");
    cal->add_option("--eps10-range", eps10_range, "lo:hi range for synthetic 1->0 errors");
    cal->add_option("--eps01-range", eps01_range, "lo:hi range for synthetic 0->1 errors");
    cal->add_option("--input", input, "Existing response matrix JSON")->check(CLI::ExistingFile);
    cal->add_option("--shots-per-state", co.shots_per_state, "Estimate each column from this many shots (0 = exact)");
    cal->add_option("--seed", co.seed, "RNG seed for estimation");
    cal->add_option("--output", output, "Response matrix output")->default_val("calibration.json");
    cal->add_option("--diagnostics", diagnostics, "Diagonal-by-zero-count CSV output")
        ->default_val("calibration_diagnostics.csv");
    cal->add_option("--params-output", params_out, "Per-qubit parameter JSON output");

    std::string aa_config, aa_output = "appendix_a.csv";
    AppendixAConfig aa;
    uint64_t aa_seed = 1;
    auto *appx = app.add_subcommand("appendix-a", "Compare two-qubit analytic variances against Monte Carlo");
    appx->add_option("--config", aa_config, "JSON config file; flags override its fields")->check(CLI::ExistingFile);
    add_appendix_a_flags(appx, aa);
    appx->add_option("--seed", aa_seed, "RNG seed");
    appx->add_option("--output", aa_output, "CSV output")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(run, rf, dry_run);
        }
        if (cal->parsed()) {
            if (cal->count("--synthetic-seed")) {
                co.synthetic_seed = synthetic_seed;
            }
            co.input_file = input;
            co.output_file = output;
            co.diagnostics_file = diagnostics;
            co.params_file = params_out;
            return calibrate_command(co, params_text, eps10_range, eps01_range, cal);
        }
        return appendix_a_command(appx, aa_config, aa, aa_seed, aa_output);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
}
