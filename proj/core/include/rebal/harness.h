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

#ifndef REBAL_HARNESS_H
#define REBAL_HARNESS_H

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rebal/analytics.h"
#include "rebal/noise_model.h"
#include "rebal/rebalance.h"
#include "rebal/unfold.h"

namespace rebal {

enum class Experiment { inverted_w, grover, gaussian_sweep, appendix_a };

const char *to_string(Experiment experiment);
Experiment parse_experiment(const std::string &name);

/// The default sweep: 21 evenly spaced means on [-1, 1] plus -0.11 and 0.78.
std::vector<double> default_gaussian_mus();

struct AppendixAConfig {
    double q0 = 0.05;
    double q1 = 0.03;
    int64_t n00 = 0;
    int64_t n01 = 0;
    int64_t n10 = 0;
    int64_t n11 = 100000;
    int64_t trials = 10000;

    TwoQubitModel model() const {
        return TwoQubitModel{q0, q1, n00, n01, n10, n11};
    }
};

struct ExperimentConfig {
    Experiment experiment = Experiment::inverted_w;

    /// Noise source: a calibration file, or per-qubit parameters when
    /// `tensor_params` is non-empty (which takes precedence).
    std::filesystem::path calibration_file;
    std::vector<QubitNoiseParams> tensor_params;

    int64_t shots = 100000;
    int64_t repetitions = 1000;
    std::vector<Strategy> strategies{Strategy::nominal, Strategy::symmetrized, Strategy::rebalanced};
    double pilot_fraction = 0.1;
    UnfoldConfig unfold;
    uint64_t seed = 1;
    std::filesystem::path output_dir = "results";

    int64_t grover_iterations = 1;
    /// Defaults to the all-ones state.
    std::optional<uint64_t> grover_target;
    double gaussian_sigma = 0.1;
    std::vector<double> gaussian_mus = default_gaussian_mus();

    AppendixAConfig appendix_a;

    /// Worker threads; 0 means one per hardware thread. Never changes results.
    size_t threads = 0;

    /// Throws ValidationError on inconsistent fields and IoError/ParseError if
    /// the calibration file cannot be loaded.
    void validate() const;

    /// Canonical JSON (sorted keys). Includes every field.
    std::string to_json() const;
    /// Fields absent from the document keep their defaults.
    static ExperimentConfig from_json(const std::string &text);
    static ExperimentConfig from_json_file(const std::filesystem::path &path);

    /// Stable 64-bit hash (hex) of the semantically meaningful fields, i.e.
    /// everything except output_dir and threads.
    std::string hash() const;
};

/// Loads or builds the response matrix named by the config.
ResponseMatrix resolve_response(const ExperimentConfig &config);

/// The calibration file committed with the sources, or its installed copy
/// when the source tree is gone.
std::filesystem::path default_calibration_path();

struct EnsembleRow {
    std::string experiment;
    std::optional<double> mu;
    EnsembleResult result;
    double exact_value = 0;  ///< noise-free value of the observable
};

struct RunReport {
    std::vector<EnsembleRow> rows;
    std::vector<std::filesystem::path> files;
    std::string config_hash;
};

/// Runs the configured experiment over every requested strategy and writes
/// ensemble.csv, summary.csv, sweep.csv (gaussian_sweep only) and
/// manifest.json into config.output_dir. For the appendix_a experiment writes
/// appendix_a.csv and manifest.json. Nothing is left behind on failure.
RunReport cmd_run(const ExperimentConfig &config);

/// Computes the ensemble rows without writing anything.
std::vector<EnsembleRow> run_experiment(const ExperimentConfig &config);

struct CalibrateOptions {
    /// Exactly one source: explicit parameters, a synthetic draw, or a file.
    std::vector<QubitNoiseParams> params;
    std::optional<uint64_t> synthetic_seed;
    SyntheticNoiseSpec synthetic;
    std::filesystem::path input_file;

    /// 0 writes the exact matrix; otherwise each column is estimated from this
    /// many shots.
    int64_t shots_per_state = 0;
    uint64_t seed = 1;

    std::filesystem::path output_file = "calibration.json";
    std::filesystem::path diagnostics_file = "calibration_diagnostics.csv";
    /// Written only when parameters are known (explicit or synthetic).
    std::filesystem::path params_file;
};

struct CalibrateReport {
    ResponseMatrix response;
    std::vector<QubitNoiseParams> params;
    std::map<size_t, double> diagnostics;
    std::vector<std::filesystem::path> files;
};

CalibrateReport cmd_calibrate(const CalibrateOptions &options);

struct AppendixARow {
    std::string state;  ///< "00", "01", "10", "11" (qubit 0 first)
    double true_count = 0;
    double analytic_as_printed = 0;
    double analytic_mirrored = 0;
    double monte_carlo = 0;
    double bootstrap_error = 0;
    double tolerance = 0;
    bool pass_as_printed = false;
    bool pass_mirrored = false;
};

/// Tolerance for comparing a linear-order analytic variance against the
/// Monte Carlo estimate: max(3 * bootstrap error, (q0 + q1)^2 * N).
double appendix_a_tolerance(const TwoQubitModel &model, double bootstrap_error);

std::vector<AppendixARow> appendix_a_comparison(const AppendixAConfig &config, uint64_t seed);

/// Writes the comparison table as CSV.
std::vector<AppendixARow> cmd_appendix_a(const AppendixAConfig &config, uint64_t seed,
                                         const std::filesystem::path &output_file);

/// 1 for validation/parse/dimension errors, 2 for I/O, 3 for numerical
/// failures, 1 for anything else.
int exit_code_for(const std::exception &e);

}  // namespace rebal

#endif
