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

#ifndef REBAL_REBALANCE_H
#define REBAL_REBALANCE_H

#include <cstdint>
#include <string>

#include "rebal/noise_model.h"
#include "rebal/rng.h"
#include "rebal/types.h"
#include "rebal/unfold.h"

namespace rebal {

enum class Strategy { nominal, rebalanced, symmetrized };

const char *to_string(Strategy strategy);
Strategy parse_strategy(const std::string &name);

struct MeasurementPlan {
    int64_t total_shots = 100000;
    /// Share of total_shots spent on the pilot run that picks the flip mask.
    /// Pilot shots are not part of the returned estimate.
    double pilot_fraction = 0.1;
    Strategy strategy = Strategy::nominal;
    UnfoldConfig unfold;
    uint64_t rng_seed = 0;

    int64_t pilot_shots() const;
    int64_t main_shots() const;
    void validate() const;
};

/// Flip every qubit whose measured marginal is strictly above one half.
FlipMask choose_flip_mask(const CountsHistogram &pilot);

/// Measure `shots` times with X gates on the qubits in `mask`, unfold in the
/// physical basis, then undo the flips classically. With an empty mask this is
/// the nominal pipeline.
CountsHistogram run_with_mask(const ProbDist &truth, const ResponseMatrix &response, int64_t shots,
                              const FlipMask &mask, const UnfoldConfig &unfold_config, Rng &rng);

CountsHistogram run_nominal(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan);

struct RebalancedRun {
    CountsHistogram corrected;  ///< original basis, main shots only
    FlipMask mask;
    CountsHistogram pilot;      ///< raw pilot counts that chose the mask
};

/// Pilot run, mask choice, flipped main run, unfold, classical undo.
RebalancedRun run_rebalanced(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan);

/// Average of a nominal run and an all-flipped run, each with half the shots.
/// The entrywise sum of the two corrected halves is returned, so the total
/// matches a single run over total_shots.
CountsHistogram run_symmetrized(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan);

struct StrategyOutcome {
    CountsHistogram corrected;
    /// Shots that contributed to `corrected`.
    int64_t shots_used;
    /// Mask applied to the main run (all ones for symmetrized's second half).
    FlipMask mask;
};

/// Runs whichever strategy plan.strategy names.
StrategyOutcome run_strategy(const ProbDist &truth, const ResponseMatrix &response, const MeasurementPlan &plan);

}  // namespace rebal

#endif
