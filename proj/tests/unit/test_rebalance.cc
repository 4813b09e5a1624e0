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

#include <gtest/gtest.h>

#include <cmath>

#include "rebal/analytics.h"
#include "rebal/error.h"
#include "rebal/histogram.h"
#include "rebal/noise_model.h"
#include "rebal/rebalance.h"
#include "rebal/states.h"
#include "support/oracles.h"

namespace rebal {
namespace {

ResponseMatrix decay_only(size_t n, double eps10) {
    return build_tensor_response(std::vector<QubitNoiseParams>(n, {0.0, eps10}));
}

TEST(Rebalance, PlanShots) {
    MeasurementPlan p;
    p.strategy = Strategy::rebalanced;
    EXPECT_EQ(p.pilot_shots(), 10000);
    EXPECT_EQ(p.main_shots(), 90000);
    p.strategy = Strategy::nominal;
    EXPECT_EQ(p.pilot_shots(), 0);
    EXPECT_EQ(p.main_shots(), 100000);
}

TEST(Rebalance, PlanValidation) {
    MeasurementPlan p;
    p.strategy = Strategy::rebalanced;
    p.total_shots = 4;
    EXPECT_THROW(p.validate(), ValidationError);
    p.total_shots = 100;
    p.pilot_fraction = 1.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p.pilot_fraction = 0.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p.strategy = Strategy::symmetrized;
    p.total_shots = 1;
    EXPECT_THROW(p.validate(), ValidationError);
    p.total_shots = 0;
    p.strategy = Strategy::nominal;
    EXPECT_THROW(p.validate(), ValidationError);
    EXPECT_THROW(parse_strategy("flipped"), ValidationError);
    EXPECT_EQ(parse_strategy("symmetrized"), Strategy::symmetrized);
}

TEST(Rebalance, ChooseFlipMaskExamples) {
    EXPECT_EQ(choose_flip_mask(CountsHistogram(2, {10, 0, 0, 0})).bits(), 0u);
    EXPECT_EQ(choose_flip_mask(CountsHistogram(2, {0, 0, 0, 10})).bits(), 3u);
    // Exactly one half: not flipped.
    EXPECT_EQ(choose_flip_mask(CountsHistogram(2, {5, 5, 0, 0})).bits(), 0u);
    EXPECT_EQ(choose_flip_mask(CountsHistogram(2, {4, 6, 0, 0})).bits(), 1u);
    EXPECT_THROW(choose_flip_mask(CountsHistogram::zeros(2)), ValidationError);
}

TEST(Rebalance, InvertedWPilotFlipsEverything) {
    auto r = build_tensor_response(std::vector<QubitNoiseParams>(5, {0.005, 0.1}));
    auto pilot = sample_measured(inverted_w_dist(5), r, 10000, 5);
    EXPECT_EQ(choose_flip_mask(pilot).bits(), 0b11111u);
}

TEST(Rebalance, IdentityResponseMatchesNominalShotCount) {
    auto r = ResponseMatrix::identity(3);
    MeasurementPlan p;
    p.total_shots = 1000;
    p.strategy = Strategy::rebalanced;
    auto out = run_rebalanced(inverted_w_dist(3), r, p);
    EXPECT_NEAR(out.corrected.total(), 900, 1e-9);
    EXPECT_NEAR(out.pilot.total(), 100, 1e-9);
    EXPECT_EQ(out.mask.bits(), 0b111u);
    for (size_t s = 0; s < 8; s++) {
        if (inverted_w_dist(3)[s] == 0) {
            EXPECT_NEAR(out.corrected[s], 0, 1e-9);
        }
    }
}

TEST(Rebalance, DecayOnlyPointMassIsExact) {
    // After flipping, the physical state is all zeros, which never decays.
    auto r = decay_only(5, 0.1);
    auto t = ProbDist::point_mass(5, StateIndex{31});
    MeasurementPlan p;
    p.strategy = Strategy::rebalanced;
    p.unfold.method = UnfoldMethod::matrix_inversion;
    auto obs = state_count_observable(StateIndex{31}, p.total_shots);
    auto res = ensemble_run(t, r, p, obs, 20, 1);
    EXPECT_EQ(res.std, 0);
    EXPECT_NEAR(res.mean, p.total_shots, 1e-6);
    auto nominal = p;
    nominal.strategy = Strategy::nominal;
    EXPECT_GT(ensemble_run(t, r, nominal, obs, 20, 1).std, 0);
}

TEST(Rebalance, SymmetrizedTotalsAndMask) {
    auto r = build_tensor_response(std::vector<QubitNoiseParams>(3, {0.01, 0.1}));
    MeasurementPlan p;
    p.total_shots = 1001;
    p.strategy = Strategy::symmetrized;
    p.unfold.method = UnfoldMethod::matrix_inversion;
    auto out = run_strategy(inverted_w_dist(3), r, p);
    EXPECT_NEAR(out.corrected.total(), 1001, 1e-9);
    EXPECT_EQ(out.shots_used, 1001);
    EXPECT_EQ(out.mask.bits(), 0b111u);
}

TEST(Rebalance, RunWithMaskEqualsConjugatedUnfold) {
    // The pipeline samples t ^ mask through R, unfolds with R, flips back.
    // With the same draw this equals unfolding the flipped-back raw counts
    // with the XOR-conjugated matrix.
    auto r = build_tensor_response(std::vector<QubitNoiseParams>{{0.01, 0.1}, {0.02, 0.15}, {0.005, 0.12}});
    auto t = gaussian_dist(0.4, 0.3, 3);
    FlipMask mask(0b110, 3);
    UnfoldConfig cfg{UnfoldMethod::matrix_inversion};
    Rng a = make_rng(3, 0), b = make_rng(3, 0);
    auto got = run_with_mask(t, r, 5000, mask, cfg, a);
    auto raw = sample_measured(xor_permute(t, mask), r, 5000, b);
    auto want = matrix_inverse_unfold(xor_permute(raw, mask), r.xor_conjugated(mask));
    for (size_t s = 0; s < 8; s++) {
        EXPECT_NEAR(got[s], want[s], 1e-9);
    }
}

TEST(Rebalance, DeterministicPerSeed) {
    auto r = build_tensor_response(std::vector<QubitNoiseParams>(4, {0.01, 0.1}));
    MeasurementPlan p;
    p.total_shots = 2000;
    p.strategy = Strategy::rebalanced;
    p.rng_seed = 42;
    auto a = run_strategy(inverted_w_dist(4), r, p);
    auto b = run_strategy(inverted_w_dist(4), r, p);
    EXPECT_EQ(a.corrected, b.corrected);
    p.rng_seed = 43;
    EXPECT_NE(run_strategy(inverted_w_dist(4), r, p).corrected, a.corrected);
}

TEST(Rebalance, DimensionMismatch) {
    MeasurementPlan p;
    EXPECT_THROW(run_strategy(inverted_w_dist(3), ResponseMatrix::identity(4), p), DimensionError);
}

}  // namespace
}  // namespace rebal
