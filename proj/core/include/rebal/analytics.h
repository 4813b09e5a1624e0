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

#ifndef REBAL_ANALYTICS_H
#define REBAL_ANALYTICS_H

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rebal/noise_model.h"
#include "rebal/rebalance.h"
#include "rebal/types.h"

namespace rebal {

/// A scalar computed from a corrected histogram.
struct Observable {
    std::string label;
    std::function<double(const CountsHistogram &)> evaluate;
};

/// Mean integer value of the bitstring (observable_base10).
Observable base10_observable();

/// Counts in `target`, expressed per `budget` shots: counts[target] / total *
/// budget. Strategies that spend part of the budget on a pilot run return
/// histograms with a smaller total, so raw counts would not be comparable.
Observable state_count_observable(StateIndex target, int64_t budget);

struct EnsembleResult {
    int64_t repetitions = 0;
    double mean = 0;
    double std = 0;
    double std_err_of_std = 0;
    std::string strategy;
    std::string observable;

    /// Repetitions whose corrected histogram had a negative entry.
    int64_t negative_entry_runs = 0;
    /// How often each flip mask was used for the main run.
    std::map<uint64_t, int64_t> mask_counts;
    std::vector<double> values;

    double std_err_of_mean() const;
};

/// Runs the plan's strategy once per seed and summarizes the observable.
/// Seeds must be pairwise distinct.
EnsembleResult ensemble_run(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan,
                            const Observable &observable, std::span<const uint64_t> seeds, size_t threads = 0);

/// Repetition r uses seed derive_seed(plan.rng_seed, r).
EnsembleResult ensemble_run(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan,
                            const Observable &observable, int64_t repetitions, size_t threads = 0);

/// Sample mean, sample standard deviation and std / sqrt(2 (n - 1)).
/// Accumulation is compensated and in index order.
EnsembleResult summarize(std::span<const double> values);

/// (sigma_method / sigma_nominal)^2: share of the nominal shot count a method
/// needs for the same statistical precision.
double shots_equivalent_fraction(double sigma_method, double sigma_nominal);

/// (a.std - b.std) in units of their combined standard error.
double std_gap_significance(const EnsembleResult &a, const EnsembleResult &b);

// ---------------------------------------------------------------------------
// Two-qubit model with pure decay errors.
//
// Kets are labelled |ij> with i the value of qubit 0 and j the value of
// qubit 1; arrays of four values are ordered |00>, |01>, |10>, |11>.
// q0 and q1 are Pr(1 -> 0) for qubits 0 and 1; Pr(0 -> 1) is zero.
// ---------------------------------------------------------------------------

using StateQuad = std::array<double, 4>;

struct TwoQubitModel {
    double q0 = 0;
    double q1 = 0;
    int64_t n00 = 0;
    int64_t n01 = 0;
    int64_t n10 = 0;
    int64_t n11 = 0;

    int64_t total() const {
        return n00 + n01 + n10 + n11;
    }
    StateQuad true_counts() const;
    void validate() const;
};

/// Register index of the ket at position k of a StateQuad.
size_t two_qubit_state_index(size_t k);

/// Expected measured counts under the exact tensor channel.
StateQuad appendix_a_expectations(const TwoQubitModel &model);

/// The same expectations truncated at linear order in q0, q1.
StateQuad appendix_a_expectations_linear(const TwoQubitModel &model);

/// Linear-order inverse: coefficients c[k][l] with reconstructed
/// N_k = sum_l c[k][l] * measured_l.
std::array<StateQuad, 4> appendix_a_inverse_coefficients(const TwoQubitModel &model);

/// The |10> row of the linear-order variance formula can be written two ways:
/// q1 N11 + q1 N10 or q1 N11 + q0 N10. The second mirrors the |01> row.
enum class A12Variant { as_printed, mirrored };

/// Delta Var[N_ij] at linear order in q0, q1.
StateQuad appendix_a_variance_deltas(const TwoQubitModel &model, A12Variant variant = A12Variant::as_printed);

/// N_ij (1 - N_ij / N) + Delta Var[N_ij].
StateQuad appendix_a_variances(const TwoQubitModel &model, A12Variant variant = A12Variant::as_printed);

struct MonteCarloVariances {
    StateQuad mean{};
    StateQuad variance{};
    StateQuad bootstrap_error{};
    int64_t trials = 0;
};

/// Repeats the two-qubit experiment `trials` times: a multinomial draw of N
/// shots from the exact channel probabilities followed by the linear-order
/// inverse. Returns the empirical variance of each reconstructed count and a
/// bootstrap standard error for it.
MonteCarloVariances monte_carlo_variance_oracle(const TwoQubitModel &model, int64_t trials, uint64_t seed,
                                                int bootstrap_resamples = 200);

}  // namespace rebal

#endif
