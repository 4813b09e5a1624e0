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

#include "rebal/analytics.h"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "rebal/error.h"
#include "rebal/histogram.h"
#include "rebal/parallel.h"
#include "rebal/rng.h"

namespace rebal {

namespace {

class CompensatedSum {
   public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + comp_;
    }

   private:
    double sum_ = 0;
    double comp_ = 0;
};

double sample_variance(std::span<const double> xs, double mean) {
    CompensatedSum sq;
    for (double x : xs) {
        double d = x - mean;
        sq.add(d * d);
    }
    return sq.value() / static_cast<double>(xs.size() - 1);
}

double sample_mean(std::span<const double> xs) {
    CompensatedSum s;
    for (double x : xs) {
        s.add(x);
    }
    return s.value() / static_cast<double>(xs.size());
}

}  // namespace

Observable base10_observable() {
    return Observable{"base10_mean", [](const CountsHistogram &h) { return observable_base10(h); }};
}

Observable state_count_observable(StateIndex target, int64_t budget) {
    if (budget < 1) {
        throw ValidationError("shot budget must be positive");
    }
    auto label = fmt::format("counts_in_state_{}", target.value);
    return Observable{label, [target, budget](const CountsHistogram &h) {
                          double total = h.total();
                          if (!(total > 0)) {
                              throw ValidationError("observable is undefined for a histogram with nonpositive total");
                          }
                          return counts_in_state(h, target) / total * static_cast<double>(budget);
                      }};
}

double EnsembleResult::std_err_of_mean() const {
    return repetitions > 0 ? std / std::sqrt(static_cast<double>(repetitions)) : 0.0;
}

EnsembleResult summarize(std::span<const double> values) {
    if (values.size() < 2) {
        throw ValidationError("ensemble statistics need at least two repetitions");
    }
    EnsembleResult r;
    r.repetitions = static_cast<int64_t>(values.size());
    r.mean = sample_mean(values);
    r.std = std::sqrt(sample_variance(values, r.mean));
    r.std_err_of_std = r.std / std::sqrt(2.0 * static_cast<double>(values.size() - 1));
    r.values.assign(values.begin(), values.end());
    return r;
}

EnsembleResult ensemble_run(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan,
                            const Observable &observable, std::span<const uint64_t> seeds, size_t threads) {
    if (seeds.size() < 2) {
        throw ValidationError("an ensemble needs at least two repetitions");
    }
    std::set<uint64_t> distinct(seeds.begin(), seeds.end());
    if (distinct.size() != seeds.size()) {
        throw ValidationError("ensemble repetitions must use distinct seeds");
    }
    plan.validate();

    size_t reps = seeds.size();
    std::vector<double> values(reps);
    std::vector<uint8_t> negative(reps);
    std::vector<uint64_t> masks(reps);
    parallel_for(
        reps,
        [&](size_t r) {
            MeasurementPlan p = plan;
            p.rng_seed = seeds[r];
            auto outcome = run_strategy(truth, response, p);
            values[r] = observable.evaluate(outcome.corrected);
            negative[r] = outcome.corrected.has_negative_entries();
            masks[r] = outcome.mask.bits();
        },
        threads);

    EnsembleResult result = summarize(values);
    result.strategy = to_string(plan.strategy);
    result.observable = observable.label;
    for (size_t r = 0; r < reps; r++) {
        result.negative_entry_runs += negative[r];
        result.mask_counts[masks[r]]++;
    }
    return result;
}

EnsembleResult ensemble_run(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan,
                            const Observable &observable, int64_t repetitions, size_t threads) {
    if (repetitions < 2) {
        throw ValidationError("an ensemble needs at least two repetitions");
    }
    std::vector<uint64_t> seeds(static_cast<size_t>(repetitions));
    for (size_t r = 0; r < seeds.size(); r++) {
        seeds[r] = derive_seed(plan.rng_seed, r);
    }
    return ensemble_run(truth, response, plan, observable, seeds, threads);
}

double shots_equivalent_fraction(double sigma_method, double sigma_nominal) {
    if (!(sigma_method >= 0) || !(sigma_nominal > 0)) {
        throw ValidationError("the nominal standard deviation must be positive and the method's nonnegative");
    }
    double ratio = sigma_method / sigma_nominal;
    return ratio * ratio;
}

double std_gap_significance(const EnsembleResult &a, const EnsembleResult &b) {
    double combined = std::hypot(a.std_err_of_std, b.std_err_of_std);
    if (!(combined > 0)) {
        throw ValidationError("cannot compare ensembles with zero standard error");
    }
    return (a.std - b.std) / combined;
}

StateQuad TwoQubitModel::true_counts() const {
    return {static_cast<double>(n00), static_cast<double>(n01), static_cast<double>(n10), static_cast<double>(n11)};
}

void TwoQubitModel::validate() const {
    if (!(q0 >= 0 && q0 < 1) || !(q1 >= 0 && q1 < 1)) {
        throw ValidationError(fmt::format("decay probabilities must lie in [0, 1), got q0={} q1={}", q0, q1));
    }
    if (n00 < 0 || n01 < 0 || n10 < 0 || n11 < 0) {
        throw ValidationError("true counts must be nonnegative");
    }
    if (total() < 1) {
        throw ValidationError("the two-qubit model needs at least one shot");
    }
}

size_t two_qubit_state_index(size_t k) {
    static constexpr size_t kIndex[4] = {0, 2, 1, 3};
    if (k >= 4) {
        throw DimensionError("two-qubit state position must be 0..3");
    }
    return kIndex[k];
}

StateQuad appendix_a_expectations(const TwoQubitModel &m) {
    m.validate();
    auto [n00, n01, n10, n11] = m.true_counts();
    double q0 = m.q0, q1 = m.q1;
    return {
        n00 + q0 * n10 + q1 * n01 + q0 * q1 * n11,
        (1 - q1) * n01 + q0 * (1 - q1) * n11,
        (1 - q0) * n10 + q1 * (1 - q0) * n11,
        (1 - q0) * (1 - q1) * n11,
    };
}

StateQuad appendix_a_expectations_linear(const TwoQubitModel &m) {
    m.validate();
    auto [n00, n01, n10, n11] = m.true_counts();
    double q0 = m.q0, q1 = m.q1;
    return {
        n00 + q0 * n10 + q1 * n01,
        (1 - q1) * n01 + q0 * n11,
        (1 - q0) * n10 + q1 * n11,
        (1 - q0 - q1) * n11,
    };
}

std::array<StateQuad, 4> appendix_a_inverse_coefficients(const TwoQubitModel &m) {
    m.validate();
    double q0 = m.q0, q1 = m.q1;
    return {{
        {1, -q1, -q0, 0},
        {0, 1 + q1, 0, -q0},
        {0, 0, 1 + q0, -q1},
        {0, 0, 0, 1 + q0 + q1},
    }};
}

StateQuad appendix_a_variance_deltas(const TwoQubitModel &m, A12Variant variant) {
    m.validate();
    auto [n00, n01, n10, n11] = m.true_counts();
    (void)n00;
    double q0 = m.q0, q1 = m.q1;
    double row10 = variant == A12Variant::as_printed ? q1 * n11 + q1 * n10 : q1 * n11 + q0 * n10;
    return {
        q0 * n10 + q1 * n01,
        q0 * n11 + q1 * n01,
        row10,
        (q0 + q1) * n11,
    };
}

StateQuad appendix_a_variances(const TwoQubitModel &m, A12Variant variant) {
    auto delta = appendix_a_variance_deltas(m, variant);
    auto truth = m.true_counts();
    double total = static_cast<double>(m.total());
    StateQuad out;
    for (size_t k = 0; k < 4; k++) {
        out[k] = truth[k] * (1 - truth[k] / total) + delta[k];
    }
    return out;
}

MonteCarloVariances monte_carlo_variance_oracle(const TwoQubitModel &model, int64_t trials, uint64_t seed,
                                                int bootstrap_resamples) {
    model.validate();
    if (trials < 100) {
        throw ValidationError("the Monte Carlo oracle needs at least 100 trials");
    }
    if (bootstrap_resamples < 2) {
        throw ValidationError("bootstrap needs at least two resamples");
    }
    auto expected = appendix_a_expectations(model);
    auto coeff = appendix_a_inverse_coefficients(model);
    int64_t shots = model.total();

    size_t t_count = static_cast<size_t>(trials);
    std::array<std::vector<double>, 4> recon;
    for (auto &v : recon) {
        v.resize(t_count);
    }
    Rng rng = make_rng(seed, 0);
    for (size_t t = 0; t < t_count; t++) {
        auto draw = sample_multinomial(rng, shots, expected);
        for (size_t k = 0; k < 4; k++) {
            double acc = 0;
            for (size_t l = 0; l < 4; l++) {
                acc += coeff[k][l] * static_cast<double>(draw[l]);
            }
            recon[k][t] = acc;
        }
    }

    MonteCarloVariances out;
    out.trials = trials;
    for (size_t k = 0; k < 4; k++) {
        out.mean[k] = sample_mean(recon[k]);
        out.variance[k] = sample_variance(recon[k], out.mean[k]);
    }

    Rng boot_rng = make_rng(seed, 1);
    std::uniform_int_distribution<size_t> pick(0, t_count - 1);
    std::array<std::vector<double>, 4> boot_vars;
    std::vector<size_t> idx(t_count);
    for (int b = 0; b < bootstrap_resamples; b++) {
        for (auto &i : idx) {
            i = pick(boot_rng);
        }
        for (size_t k = 0; k < 4; k++) {
            // Shifted single-pass accumulation around the full-sample mean.
            CompensatedSum s, sq;
            for (size_t i : idx) {
                double d = recon[k][i] - out.mean[k];
                s.add(d);
                sq.add(d * d);
            }
            double n = static_cast<double>(t_count);
            double var = (sq.value() - s.value() * s.value() / n) / (n - 1);
            boot_vars[k].push_back(var);
        }
    }
    for (size_t k = 0; k < 4; k++) {
        double m = sample_mean(boot_vars[k]);
        out.bootstrap_error[k] = std::sqrt(sample_variance(boot_vars[k], m));
    }
    return out;
}

}  // namespace rebal
