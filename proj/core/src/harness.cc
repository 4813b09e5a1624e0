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

#include "rebal/harness.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rebal/error.h"
#include "rebal/histogram.h"
#include "rebal/states.h"

#ifndef REBAL_DEFAULT_CALIBRATION
#define REBAL_DEFAULT_CALIBRATION "data/default_calibration.json"
#endif
#ifndef REBAL_INSTALLED_CALIBRATION
#define REBAL_INSTALLED_CALIBRATION REBAL_DEFAULT_CALIBRATION
#endif

namespace rebal {

using nlohmann::json;

namespace {

// Writes every file under a temporary name and renames them all on commit.
// Anything not committed is removed on destruction, including directories
// this transaction created.
class OutputTransaction {
   public:
    OutputTransaction() = default;
    OutputTransaction(const OutputTransaction &) = delete;
    OutputTransaction &operator=(const OutputTransaction &) = delete;

    ~OutputTransaction() {
        if (committed_) {
            return;
        }
        std::error_code ec;
        for (const auto &[tmp, final_path] : pending_) {
            std::filesystem::remove(tmp, ec);
        }
        for (auto it = created_dirs_.rbegin(); it != created_dirs_.rend(); ++it) {
            if (std::filesystem::is_empty(*it, ec)) {
                std::filesystem::remove(*it, ec);
            }
        }
    }

    void add(const std::filesystem::path &path, const std::string &content) {
        auto parent = path.parent_path();
        if (!parent.empty() && !std::filesystem::exists(parent)) {
            std::vector<std::filesystem::path> missing;
            for (auto p = parent; !p.empty() && !std::filesystem::exists(p); p = p.parent_path()) {
                missing.push_back(p);
            }
            std::error_code ec;
            std::filesystem::create_directories(parent, ec);
            if (ec) {
                throw IoError(fmt::format("cannot create directory '{}': {}", parent.string(), ec.message()));
            }
            created_dirs_.insert(created_dirs_.end(), missing.rbegin(), missing.rend());
        }
        auto tmp = path;
        tmp += ".partial";
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(fmt::format("cannot write '{}'", path.string()));
        }
        pending_.emplace_back(tmp, path);
        out << content;
        if (!out.flush()) {
            throw IoError(fmt::format("failed writing '{}'", path.string()));
        }
    }

    std::vector<std::filesystem::path> commit() {
        std::vector<std::filesystem::path> done;
        for (const auto &[tmp, final_path] : pending_) {
            std::error_code ec;
            std::filesystem::rename(tmp, final_path, ec);
            if (ec) {
                throw IoError(fmt::format("cannot move '{}' into place: {}", final_path.string(), ec.message()));
            }
            done.push_back(final_path);
        }
        committed_ = true;
        return done;
    }

   private:
    std::vector<std::pair<std::filesystem::path, std::filesystem::path>> pending_;
    std::vector<std::filesystem::path> created_dirs_;
    bool committed_ = false;
};

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

uint64_t fnv1a64(const std::string &text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string number(double v) {
    return fmt::format("{}", v);
}

const char *mask_mode(Strategy s) {
    switch (s) {
        case Strategy::nominal:
            return "none";
        case Strategy::rebalanced:
            return "pilot";
        case Strategy::symmetrized:
            return "all";
    }
    return "?";
}

json params_to_json(const std::vector<QubitNoiseParams> &params) {
    json arr = json::array();
    for (const auto &p : params) {
        arr.push_back({{"eps01", p.eps01}, {"eps10", p.eps10}});
    }
    return arr;
}

std::vector<QubitNoiseParams> params_from_json(const json &arr) {
    if (!arr.is_array()) {
        throw ParseError("\"tensor_params\" must be an array of {\"eps01\", \"eps10\"} objects");
    }
    std::vector<QubitNoiseParams> out;
    for (const auto &item : arr) {
        out.push_back(QubitNoiseParams{item.at("eps01").get<double>(), item.at("eps10").get<double>()});
    }
    return out;
}

json config_to_json(const ExperimentConfig &c) {
    json strategies = json::array();
    for (auto s : c.strategies) {
        strategies.push_back(to_string(s));
    }
    json j;
    j["experiment"] = to_string(c.experiment);
    j["calibration_file"] = c.calibration_file.string();
    j["tensor_params"] = params_to_json(c.tensor_params);
    j["shots"] = c.shots;
    j["repetitions"] = c.repetitions;
    j["strategies"] = strategies;
    j["pilot_fraction"] = c.pilot_fraction;
    j["unfold"] = {{"method", to_string(c.unfold.method)},
                   {"ibu_iterations", c.unfold.ibu_iterations},
                   {"ibu_prior", "uniform"},
                   {"max_condition", c.unfold.max_condition}};
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir.string();
    j["grover_iterations"] = c.grover_iterations;
    j["grover_target"] = c.grover_target ? json(*c.grover_target) : json(nullptr);
    j["gaussian_sigma"] = c.gaussian_sigma;
    j["gaussian_mus"] = c.gaussian_mus;
    j["appendix_a"] = {{"q0", c.appendix_a.q0},   {"q1", c.appendix_a.q1},   {"n00", c.appendix_a.n00},
                       {"n01", c.appendix_a.n01}, {"n10", c.appendix_a.n10}, {"n11", c.appendix_a.n11},
                       {"trials", c.appendix_a.trials}};
    j["threads"] = c.threads;
    return j;
}

struct TruthPoint {
    ProbDist truth;
    std::optional<double> mu;
    Observable observable;
    double exact = 0;
};

std::vector<TruthPoint> truth_points(const ExperimentConfig &c, size_t n) {
    std::vector<TruthPoint> out;
    switch (c.experiment) {
        case Experiment::inverted_w: {
            auto t = inverted_w_dist(n);
            out.push_back({t, std::nullopt, base10_observable(), observable_base10(t)});
            break;
        }
        case Experiment::grover: {
            StateIndex target{c.grover_target.value_or(num_states(n) - 1)};
            auto t = grover_dist(n, target, c.grover_iterations);
            out.push_back({t, std::nullopt, state_count_observable(target, c.shots),
                           t[target.value] * static_cast<double>(c.shots)});
            break;
        }
        case Experiment::gaussian_sweep:
            for (double mu : c.gaussian_mus) {
                auto t = gaussian_dist(mu, c.gaussian_sigma, n);
                out.push_back({t, mu, base10_observable(), observable_base10(t)});
            }
            break;
        case Experiment::appendix_a:
            break;
    }
    return out;
}

std::string ensemble_csv(const std::vector<EnsembleRow> &rows, const ExperimentConfig &c) {
    std::string out = "experiment,strategy,mu,mean,std,std_err,shots,repetitions,flip_mask_mode\n";
    for (const auto &r : rows) {
        auto s = parse_strategy(r.result.strategy);
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.experiment, r.result.strategy,
                           r.mu ? number(*r.mu) : "", number(r.result.mean), number(r.result.std),
                           number(r.result.std_err_of_std), c.shots, r.result.repetitions, mask_mode(s));
    }
    return out;
}

const EnsembleRow *find_nominal(const std::vector<EnsembleRow> &rows, const EnsembleRow &like) {
    for (const auto &r : rows) {
        if (r.result.strategy == "nominal" && r.experiment == like.experiment && r.mu == like.mu) {
            return &r;
        }
    }
    return nullptr;
}

std::string summary_csv(const std::vector<EnsembleRow> &rows) {
    std::string out = "experiment,mu,strategy,std,std_nominal,shots_equivalent_fraction\n";
    for (const auto &r : rows) {
        const EnsembleRow *nom = find_nominal(rows, r);
        if (!nom) {
            continue;
        }
        // A noiseless nominal ensemble leaves the fraction undefined.
        std::string frac =
            nom->result.std > 0 ? number(shots_equivalent_fraction(r.result.std, nom->result.std)) : "";
        out += fmt::format("{},{},{},{},{},{}\n", r.experiment, r.mu ? number(*r.mu) : "", r.result.strategy,
                           number(r.result.std), number(nom->result.std), frac);
    }
    return out;
}

std::string sweep_csv(const std::vector<EnsembleRow> &rows, const ExperimentConfig &c) {
    std::string out = "mu";
    for (auto s : c.strategies) {
        out += fmt::format(",mean_{0},std_{0},std_err_{0}", to_string(s));
    }
    out += "\n";
    for (double mu : c.gaussian_mus) {
        out += number(mu);
        for (auto s : c.strategies) {
            for (const auto &r : rows) {
                if (r.mu == mu && r.result.strategy == to_string(s)) {
                    out += fmt::format(",{},{},{}", number(r.result.mean), number(r.result.std),
                                       number(r.result.std_err_of_std));
                    break;
                }
            }
        }
        out += "\n";
    }
    return out;
}

std::string appendix_a_csv(const std::vector<AppendixARow> &rows) {
    std::string out =
        "state,true_count,analytic_as_printed,analytic_mirrored,monte_carlo,bootstrap_error,tolerance,"
        "pass_as_printed,pass_mirrored\n";
    for (const auto &r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.state, number(r.true_count),
                           number(r.analytic_as_printed), number(r.analytic_mirrored), number(r.monte_carlo),
                           number(r.bootstrap_error), number(r.tolerance), r.pass_as_printed ? "pass" : "fail",
                           r.pass_mirrored ? "pass" : "fail");
    }
    return out;
}

std::string diagnostics_csv(const std::map<size_t, double> &diag) {
    std::string out = "zeros_in_bitstring,mean_correct_probability\n";
    for (const auto &[zeros, p] : diag) {
        out += fmt::format("{},{}\n", zeros, number(p));
    }
    return out;
}

}  // namespace

const char *to_string(Experiment experiment) {
    switch (experiment) {
        case Experiment::inverted_w:
            return "inverted_w";
        case Experiment::grover:
            return "grover";
        case Experiment::gaussian_sweep:
            return "gaussian_sweep";
        case Experiment::appendix_a:
            return "appendix_a";
    }
    return "?";
}

Experiment parse_experiment(const std::string &name) {
    for (auto e : {Experiment::inverted_w, Experiment::grover, Experiment::gaussian_sweep, Experiment::appendix_a}) {
        if (name == to_string(e)) {
            return e;
        }
    }
    throw ValidationError("unknown experiment '" + name +
                          "' (expected inverted_w, grover, gaussian_sweep or appendix_a)");
}

std::vector<double> default_gaussian_mus() {
    std::vector<double> mus;
    for (int i = 0; i <= 20; i++) {
        mus.push_back(-1 + 0.1 * i);
    }
    mus.push_back(-0.11);
    mus.push_back(0.78);
    std::sort(mus.begin(), mus.end());
    return mus;
}

std::filesystem::path default_calibration_path() {
    std::filesystem::path source_tree = REBAL_DEFAULT_CALIBRATION;
    if (std::filesystem::exists(source_tree)) {
        return source_tree;
    }
    return REBAL_INSTALLED_CALIBRATION;
}

void ExperimentConfig::validate() const {
    unfold.validate();
    if (experiment == Experiment::appendix_a) {
        appendix_a.model().validate();
        if (appendix_a.trials < 100) {
            throw ValidationError("appendix_a needs at least 100 Monte Carlo trials");
        }
        return;
    }
    if (tensor_params.empty() && calibration_file.empty()) {
        throw ValidationError("no noise source: give a calibration file or per-qubit tensor parameters");
    }
    for (const auto &p : tensor_params) {
        p.validate();
    }
    if (shots < 1) {
        throw ValidationError("shots per run must be positive");
    }
    if (repetitions < 2) {
        throw ValidationError("repetitions must be at least 2");
    }
    if (strategies.empty()) {
        throw ValidationError("at least one strategy is required");
    }
    std::set<Strategy> distinct(strategies.begin(), strategies.end());
    if (distinct.size() != strategies.size()) {
        throw ValidationError("strategies must not repeat");
    }
    for (auto s : strategies) {
        MeasurementPlan plan{shots, pilot_fraction, s, unfold, seed};
        plan.validate();
    }
    if (grover_iterations < 0) {
        throw ValidationError("Grover iteration count must be nonnegative");
    }
    if (!(gaussian_sigma > 0)) {
        throw ValidationError("Gaussian width must be positive");
    }
    if (experiment == Experiment::gaussian_sweep && gaussian_mus.empty()) {
        throw ValidationError("the Gaussian sweep needs at least one mean");
    }
    for (double mu : gaussian_mus) {
        if (!std::isfinite(mu)) {
            throw ValidationError("Gaussian means must be finite");
        }
    }
}

std::string ExperimentConfig::to_json() const {
    return config_to_json(*this).dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(const std::string &text) {
    static const std::set<std::string> kKnown = {
        "experiment",     "calibration_file", "tensor_params",     "shots",          "repetitions",
        "strategies",     "pilot_fraction",   "unfold",            "seed",           "output_dir",
        "grover_iterations", "grover_target", "gaussian_sigma",    "gaussian_mus",   "appendix_a",
        "threads"};
    ExperimentConfig c;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(fmt::format("config is not valid JSON: {}", e.what()));
    }
    if (!j.is_object()) {
        throw ParseError("config must be a JSON object");
    }
    try {
        for (const auto &[key, value] : j.items()) {
            if (!kKnown.count(key)) {
                throw ParseError(fmt::format("unknown config key \"{}\"", key));
            }
        }
        if (j.contains("experiment")) {
            c.experiment = parse_experiment(j["experiment"].get<std::string>());
        }
        if (j.contains("calibration_file")) {
            c.calibration_file = j["calibration_file"].get<std::string>();
        }
        if (j.contains("tensor_params")) {
            c.tensor_params = params_from_json(j["tensor_params"]);
        }
        if (j.contains("shots")) {
            c.shots = j["shots"].get<int64_t>();
        }
        if (j.contains("repetitions")) {
            c.repetitions = j["repetitions"].get<int64_t>();
        }
        if (j.contains("strategies")) {
            c.strategies.clear();
            for (const auto &s : j["strategies"]) {
                c.strategies.push_back(parse_strategy(s.get<std::string>()));
            }
        }
        if (j.contains("pilot_fraction")) {
            c.pilot_fraction = j["pilot_fraction"].get<double>();
        }
        if (j.contains("unfold")) {
            const auto &u = j["unfold"];
            if (u.contains("method")) {
                c.unfold.method = parse_unfold_method(u["method"].get<std::string>());
            }
            if (u.contains("ibu_iterations")) {
                c.unfold.ibu_iterations = u["ibu_iterations"].get<int>();
            }
            if (u.contains("ibu_prior") && u["ibu_prior"].get<std::string>() != "uniform") {
                throw ValidationError("only the uniform IBU prior is supported");
            }
            if (u.contains("max_condition")) {
                c.unfold.max_condition = u["max_condition"].get<double>();
            }
        }
        if (j.contains("seed")) {
            c.seed = j["seed"].get<uint64_t>();
        }
        if (j.contains("output_dir")) {
            c.output_dir = j["output_dir"].get<std::string>();
        }
        if (j.contains("grover_iterations")) {
            c.grover_iterations = j["grover_iterations"].get<int64_t>();
        }
        if (j.contains("grover_target") && !j["grover_target"].is_null()) {
            c.grover_target = j["grover_target"].get<uint64_t>();
        }
        if (j.contains("gaussian_sigma")) {
            c.gaussian_sigma = j["gaussian_sigma"].get<double>();
        }
        if (j.contains("gaussian_mus")) {
            c.gaussian_mus = j["gaussian_mus"].get<std::vector<double>>();
        }
        if (j.contains("appendix_a")) {
            const auto &a = j["appendix_a"];
            auto &d = c.appendix_a;
            d.q0 = a.value("q0", d.q0);
            d.q1 = a.value("q1", d.q1);
            d.n00 = a.value("n00", d.n00);
            d.n01 = a.value("n01", d.n01);
            d.n10 = a.value("n10", d.n10);
            d.n11 = a.value("n11", d.n11);
            d.trials = a.value("trials", d.trials);
        }
        if (j.contains("threads")) {
            c.threads = j["threads"].get<size_t>();
        }
    } catch (const json::exception &e) {
        throw ParseError(fmt::format("malformed config: {}", e.what()));
    }
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path &path) {
    auto text = read_text(path);
    try {
        return from_json(text);
    } catch (const ParseError &e) {
        throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string ExperimentConfig::hash() const {
    json j = config_to_json(*this);
    j.erase("output_dir");
    j.erase("threads");
    return fmt::format("{:016x}", fnv1a64(j.dump()));
}

ResponseMatrix resolve_response(const ExperimentConfig &config) {
    if (!config.tensor_params.empty()) {
        return build_tensor_response(config.tensor_params);
    }
    if (config.calibration_file.empty()) {
        throw ValidationError("no noise source: give a calibration file or per-qubit tensor parameters");
    }
    return load_response(config.calibration_file);
}

std::vector<EnsembleRow> run_experiment(const ExperimentConfig &config) {
    config.validate();
    if (config.experiment == Experiment::appendix_a) {
        return {};
    }
    auto response = resolve_response(config);
    size_t n = response.n_qubits();
    auto points = truth_points(config, n);

    uint64_t experiment_seed = derive_seed(config.seed, static_cast<uint64_t>(config.experiment));
    std::vector<EnsembleRow> rows;
    for (size_t p = 0; p < points.size(); p++) {
        for (auto s : config.strategies) {
            MeasurementPlan plan;
            plan.total_shots = config.shots;
            plan.pilot_fraction = config.pilot_fraction;
            plan.strategy = s;
            plan.unfold = config.unfold;
            plan.rng_seed = derive_seed(experiment_seed, p * 16 + static_cast<uint64_t>(s));
            auto result = ensemble_run(points[p].truth, response, plan, points[p].observable, config.repetitions,
                                       config.threads);
            rows.push_back(EnsembleRow{to_string(config.experiment), points[p].mu, std::move(result), points[p].exact});
        }
    }
    return rows;
}

double appendix_a_tolerance(const TwoQubitModel &model, double bootstrap_error) {
    double q = model.q0 + model.q1;
    return std::max(3 * bootstrap_error, q * q * static_cast<double>(model.total()));
}

std::vector<AppendixARow> appendix_a_comparison(const AppendixAConfig &config, uint64_t seed) {
    auto model = config.model();
    auto printed = appendix_a_variances(model, A12Variant::as_printed);
    auto mirrored = appendix_a_variances(model, A12Variant::mirrored);
    auto mc = monte_carlo_variance_oracle(model, config.trials, seed);
    auto truth = model.true_counts();
    static const char *kLabels[4] = {"00", "01", "10", "11"};

    std::vector<AppendixARow> rows;
    for (size_t k = 0; k < 4; k++) {
        AppendixARow r;
        r.state = kLabels[k];
        r.true_count = truth[k];
        r.analytic_as_printed = printed[k];
        r.analytic_mirrored = mirrored[k];
        r.monte_carlo = mc.variance[k];
        r.bootstrap_error = mc.bootstrap_error[k];
        r.tolerance = appendix_a_tolerance(model, r.bootstrap_error);
        r.pass_as_printed = std::abs(r.analytic_as_printed - r.monte_carlo) <= r.tolerance;
        r.pass_mirrored = std::abs(r.analytic_mirrored - r.monte_carlo) <= r.tolerance;
        rows.push_back(r);
    }
    return rows;
}

std::vector<AppendixARow> cmd_appendix_a(const AppendixAConfig &config, uint64_t seed,
                                         const std::filesystem::path &output_file) {
    auto rows = appendix_a_comparison(config, seed);
    OutputTransaction tx;
    tx.add(output_file, appendix_a_csv(rows));
    tx.commit();
    return rows;
}

RunReport cmd_run(const ExperimentConfig &config) {
    config.validate();
    RunReport report;
    report.config_hash = config.hash();

    json manifest;
    manifest["tool"] = "rebal";
    manifest["seed"] = config.seed;
    manifest["config_hash"] = report.config_hash;
    manifest["config"] = config_to_json(config);
    manifest["experiment"] = to_string(config.experiment);

    OutputTransaction tx;
    const auto &dir = config.output_dir;
    if (config.experiment == Experiment::appendix_a) {
        auto rows = appendix_a_comparison(config.appendix_a, config.seed);
        json checks = json::array();
        for (const auto &r : rows) {
            checks.push_back({{"state", r.state},
                              {"pass_as_printed", r.pass_as_printed},
                              {"pass_mirrored", r.pass_mirrored}});
        }
        manifest["appendix_a"] = checks;
        manifest["negative_entries_detected"] = false;
        manifest["files"] = {"appendix_a.csv", "manifest.json"};
        tx.add(dir / "appendix_a.csv", appendix_a_csv(rows));
        tx.add(dir / "manifest.json", manifest.dump(2) + "\n");
        report.files = tx.commit();
        return report;
    }

    report.rows = run_experiment(config);
    auto response = resolve_response(config);
    manifest["n_qubits"] = response.n_qubits();
    manifest["response_condition_number"] = condition_report(response);

    json results = json::array();
    bool any_negative = false;
    for (const auto &r : report.rows) {
        json masks = json::object();
        for (const auto &[bits, count] : r.result.mask_counts) {
            masks[FlipMask(bits, response.n_qubits()).to_string()] = count;
        }
        any_negative = any_negative || r.result.negative_entry_runs > 0;
        results.push_back({{"experiment", r.experiment},
                           {"mu", r.mu ? json(*r.mu) : json(nullptr)},
                           {"strategy", r.result.strategy},
                           {"observable", r.result.observable},
                           {"exact_value", r.exact_value},
                           {"mean", r.result.mean},
                           {"std_err_of_mean", r.result.std_err_of_mean()},
                           {"negative_entry_runs", r.result.negative_entry_runs},
                           {"mask_counts", masks}});
    }
    manifest["results"] = results;
    manifest["negative_entries_detected"] = any_negative;

    std::vector<std::string> names = {"ensemble.csv", "summary.csv"};
    tx.add(dir / "ensemble.csv", ensemble_csv(report.rows, config));
    tx.add(dir / "summary.csv", summary_csv(report.rows));
    if (config.experiment == Experiment::gaussian_sweep) {
        tx.add(dir / "sweep.csv", sweep_csv(report.rows, config));
        names.push_back("sweep.csv");
    }
    names.push_back("manifest.json");
    manifest["files"] = names;
    tx.add(dir / "manifest.json", manifest.dump(2) + "\n");
    report.files = tx.commit();
    return report;
}

CalibrateReport cmd_calibrate(const CalibrateOptions &options) {
    int sources = !options.params.empty() + options.synthetic_seed.has_value() + !options.input_file.empty();
    if (sources != 1) {
        throw ValidationError("calibrate needs exactly one of: per-qubit parameters, a synthetic seed, an input file");
    }
    if (options.shots_per_state < 0) {
        throw ValidationError("shots per state must be nonnegative");
    }

    std::vector<QubitNoiseParams> params;
    std::optional<ResponseMatrix> exact;
    if (!options.params.empty()) {
        params = options.params;
        exact = build_tensor_response(params);
    } else if (options.synthetic_seed) {
        params = draw_synthetic_params(options.synthetic, *options.synthetic_seed);
        exact = build_tensor_response(params);
    } else {
        exact = load_response(options.input_file);
    }

    ResponseMatrix response =
        options.shots_per_state > 0 ? estimate_response(*exact, options.shots_per_state, options.seed) : *exact;
    auto diag = diag_by_zero_count(response);

    OutputTransaction tx;
    tx.add(options.output_file, response_to_json(response));
    tx.add(options.diagnostics_file, diagnostics_csv(diag));
    if (!params.empty() && !options.params_file.empty()) {
        json doc;
        doc["n_qubits"] = params.size();
        doc["tensor_params"] = params_to_json(params);
        if (options.synthetic_seed) {
            doc["synthetic"] = {{"seed", *options.synthetic_seed},
                                {"eps10_range", {options.synthetic.eps10_min, options.synthetic.eps10_max}},
                                {"eps01_range", {options.synthetic.eps01_min, options.synthetic.eps01_max}}};
        }
        tx.add(options.params_file, doc.dump(2) + "\n");
    }
    auto files = tx.commit();
    return CalibrateReport{std::move(response), std::move(params), std::move(diag), std::move(files)};
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const IoError *>(&e)) {
        return 2;
    }
    if (dynamic_cast<const NumericalError *>(&e)) {
        return 3;
    }
    return 1;
}

}  // namespace rebal
