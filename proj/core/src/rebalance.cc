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

#include "rebal/rebalance.h"

#include <cmath>

#include <fmt/format.h>

#include "rebal/error.h"
#include "rebal/histogram.h"

namespace rebal {

namespace {

// Stream indices below plan.rng_seed.
constexpr uint64_t kPilotStream = 0;
constexpr uint64_t kMainStream = 1;
constexpr uint64_t kSymNominalStream = 2;
constexpr uint64_t kSymFlippedStream = 3;

void check_dims(const ProbDist &truth, const ResponseMatrix &response) {
    if (truth.n_qubits() != response.n_qubits()) {
        throw DimensionError(fmt::format("distribution has {} qubits but the response matrix has {}",
                                         truth.n_qubits(), response.n_qubits()));
    }
}

}  // namespace

const char *to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::nominal:
            return "nominal";
        case Strategy::rebalanced:
            return "rebalanced";
        case Strategy::symmetrized:
            return "symmetrized";
    }
    return "?";
}

Strategy parse_strategy(const std::string &name) {
    if (name == "nominal") {
        return Strategy::nominal;
    }
    if (name == "rebalanced") {
        return Strategy::rebalanced;
    }
    if (name == "symmetrized") {
        return Strategy::symmetrized;
    }
    throw ValidationError("unknown strategy '" + name + "' (expected nominal, rebalanced or symmetrized)");
}

int64_t MeasurementPlan::pilot_shots() const {
    if (strategy != Strategy::rebalanced) {
        return 0;
    }
    return static_cast<int64_t>(std::llround(pilot_fraction * static_cast<double>(total_shots)));
}

int64_t MeasurementPlan::main_shots() const {
    return total_shots - pilot_shots();
}

void MeasurementPlan::validate() const {
    unfold.validate();
    if (total_shots < 1) {
        throw ValidationError("a measurement plan needs at least one shot");
    }
    if (strategy == Strategy::rebalanced) {
        if (!(pilot_fraction > 0 && pilot_fraction < 1)) {
            throw ValidationError("pilot fraction must lie strictly between 0 and 1");
        }
        if (pilot_shots() < 1) {
            throw ValidationError(
                fmt::format("pilot fraction {} of {} shots leaves no pilot shots", pilot_fraction, total_shots));
        }
        if (main_shots() < 1) {
            throw ValidationError("pilot run consumes the whole shot budget");
        }
    }
    if (strategy == Strategy::symmetrized && total_shots < 2) {
        throw ValidationError("symmetrized readout needs at least two shots");
    }
}

FlipMask choose_flip_mask(const CountsHistogram &pilot) {
    if (!(pilot.total() > 0)) {
        throw ValidationError("cannot choose a flip mask from an empty pilot run");
    }
    auto marginals = qubit_marginals(pilot);
    uint64_t bits = 0;
    for (size_t q = 0; q < marginals.size(); q++) {
        if (marginals[q] > 0.5) {
            bits |= uint64_t{1} << q;
        }
    }
    return FlipMask(bits, pilot.n_qubits());
}

CountsHistogram run_with_mask(const ProbDist &truth, const ResponseMatrix &response, int64_t shots,
                              const FlipMask &mask, const UnfoldConfig &unfold_config, Rng &rng) {
    check_dims(truth, response);
    // X gates act before the readout channel: the physical state is t ^ mask.
    auto physical = xor_permute(truth, mask);
    auto raw = sample_measured(physical, response, shots, rng);
    return xor_permute(unfold(raw, response, unfold_config), mask);
}

CountsHistogram run_nominal(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan) {
    check_dims(truth, response);
    plan.validate();
    Rng rng = make_rng(plan.rng_seed, kMainStream);
    return run_with_mask(truth, response, plan.total_shots, FlipMask::none(truth.n_qubits()), plan.unfold, rng);
}

RebalancedRun run_rebalanced(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan) {
    check_dims(truth, response);
    MeasurementPlan p = plan;
    p.strategy = Strategy::rebalanced;
    p.validate();

    Rng pilot_rng = make_rng(p.rng_seed, kPilotStream);
    auto pilot = sample_measured(truth, response, p.pilot_shots(), pilot_rng);
    FlipMask mask = choose_flip_mask(pilot);

    Rng main_rng = make_rng(p.rng_seed, kMainStream);
    auto corrected = run_with_mask(truth, response, p.main_shots(), mask, p.unfold, main_rng);
    return RebalancedRun{std::move(corrected), mask, std::move(pilot)};
}

CountsHistogram run_symmetrized(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan) {
    check_dims(truth, response);
    MeasurementPlan p = plan;
    p.strategy = Strategy::symmetrized;
    p.validate();

    int64_t first = p.total_shots / 2;
    int64_t second = p.total_shots - first;
    size_t n = truth.n_qubits();

    Rng nominal_rng = make_rng(p.rng_seed, kSymNominalStream);
    auto a = run_with_mask(truth, response, first, FlipMask::none(n), p.unfold, nominal_rng);
    Rng flipped_rng = make_rng(p.rng_seed, kSymFlippedStream);
    auto b = run_with_mask(truth, response, second, FlipMask::all(n), p.unfold, flipped_rng);

    std::vector<double> sum(a.counts().begin(), a.counts().end());
    for (size_t s = 0; s < sum.size(); s++) {
        sum[s] += b[s];
    }
    return CountsHistogram(n, std::move(sum));
}

StrategyOutcome run_strategy(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan) {
    size_t n = truth.n_qubits();
    switch (plan.strategy) {
        case Strategy::nominal:
            return StrategyOutcome{run_nominal(truth, response, plan), plan.total_shots, FlipMask::none(n)};
        case Strategy::rebalanced: {
            auto r = run_rebalanced(truth, response, plan);
            return StrategyOutcome{std::move(r.corrected), plan.main_shots(), r.mask};
        }
        case Strategy::symmetrized:
            return StrategyOutcome{run_symmetrized(truth, response, plan), plan.total_shots, FlipMask::all(n)};
    }
    throw ValidationError("unknown strategy");
}

}  // namespace rebal
