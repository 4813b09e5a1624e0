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

// Randomized invariant suites. Every property runs over kCases inputs drawn
// from a fixed seed.

#include <gtest/gtest.h>

#include <cmath>

#include "rebal/analytics.h"
#include "rebal/histogram.h"
#include "rebal/noise_model.h"
#include "rebal/rebalance.h"
#include "rebal/unfold.h"
#include "support/oracles.h"

namespace rebal {
namespace {

constexpr int kCases = 250;

TEST(Property, XorInvolution) {
    oracle::Gen gen(101);
    for (int i = 0; i < kCases; i++) {
        size_t n = gen.index(1, 8);
        FlipMask mask(gen.index(0, (size_t{1} << n) - 1), n);
        CountsHistogram h(n, gen.counts(size_t{1} << n));
        ASSERT_EQ(xor_permute(xor_permute(h, mask), mask), h) << "case " << i;
        ProbDist p(n, gen.probs(size_t{1} << n));
        ASSERT_EQ(xor_permute(xor_permute(p, mask), mask), p) << "case " << i;
    }
}

TEST(Property, MarginalFlip) {
    oracle::Gen gen(102);
    for (int i = 0; i < kCases; i++) {
        size_t n = gen.index(1, 7);
        FlipMask mask(gen.index(0, (size_t{1} << n) - 1), n);
        CountsHistogram h(n, gen.counts(size_t{1} << n));
        auto before = qubit_marginals(h);
        auto after = qubit_marginals(xor_permute(h, mask));
        for (size_t q = 0; q < n; q++) {
            double want = mask.flips(q) ? 1 - before[q] : before[q];
            ASSERT_NEAR(after[q], want, 1e-12) << "case " << i << " qubit " << q;
        }
    }
}

TEST(Property, PilotMaskBalancesTruth) {
    // With a noiseless pilot the chosen mask leaves every true marginal at or
    // below one half, up to the pilot's own sampling error.
    oracle::Gen gen(103);
    const int64_t pilot_shots = 4000;
    const double slack = 5 * std::sqrt(0.25 / pilot_shots);
    for (int i = 0; i < kCases; i++) {
        size_t n = gen.index(1, 6);
        ProbDist t(n, gen.probs(size_t{1} << n));
        auto pilot = sample_measured(t, ResponseMatrix::identity(n), pilot_shots, gen.rng());
        auto mask = choose_flip_mask(pilot);
        for (double m : qubit_marginals(xor_permute(t, mask))) {
            ASSERT_LE(m, 0.5 + slack) << "case " << i;
        }
        auto exact = choose_flip_mask(t.expected_counts(1000));
        for (double m : qubit_marginals(xor_permute(t, exact))) {
            ASSERT_LE(m, 0.5 + 1e-12) << "case " << i;
        }
    }
}

TEST(Property, EstimatedResponseIsColumnStochastic) {
    oracle::Gen gen(104);
    for (int i = 0; i < kCases; i++) {
        size_t n = gen.index(1, 4);
        auto r = build_tensor_response(gen.params(n, 0.3));
        auto est = estimate_response(r, static_cast<int64_t>(gen.index(1, 3000)), gen.rng());
        for (size_t t = 0; t < est.dim(); t++) {
            double s = 0;
            for (size_t m = 0; m < est.dim(); m++) {
                ASSERT_GE(est.at(m, t), 0);
                ASSERT_LE(est.at(m, t), 1);
                s += est.at(m, t);
            }
            ASSERT_NEAR(s, 1, 1e-12) << "case " << i;
        }
    }
}

TEST(Property, IbuPreservesTotalAndStaysNonnegative) {
    oracle::Gen gen(105);
    for (int i = 0; i < kCases; i++) {
        size_t n = gen.index(1, 5);
        auto r = build_tensor_response(gen.params(n, 0.25));
        CountsHistogram m(n, gen.counts(size_t{1} << n, 5000));
        auto out = ibu_unfold(m, r, static_cast<int>(gen.index(1, 60)));
        ASSERT_NEAR(out.total(), m.total(), 1e-9 * m.total()) << "case " << i;
        ASSERT_FALSE(out.has_negative_entries()) << "case " << i;
    }
}

TEST(Property, UnfoldCommutesWithXorConjugation) {
    oracle::Gen gen(106);
    for (int i = 0; i < kCases; i++) {
        size_t n = gen.index(1, 5);
        auto r = build_tensor_response(gen.params(n, 0.25));
        FlipMask mask(gen.index(0, (size_t{1} << n) - 1), n);
        CountsHistogram m(n, gen.counts(size_t{1} << n, 5000));
        auto conj = r.xor_conjugated(mask);

        auto inv_a = xor_permute(matrix_inverse_unfold(m, r), mask);
        auto inv_b = matrix_inverse_unfold(xor_permute(m, mask), conj);
        auto ibu_a = xor_permute(ibu_unfold(m, r, 50), mask);
        auto ibu_b = ibu_unfold(xor_permute(m, mask), conj, 50);
        double scale = m.total();
        for (size_t s = 0; s < m.size(); s++) {
            ASSERT_NEAR(inv_a[s], inv_b[s], 1e-12 * scale) << "case " << i;
            ASSERT_NEAR(ibu_a[s], ibu_b[s], 1e-9 * scale) << "case " << i;
        }
    }
}

TEST(Property, SeededRunsAreDeterministic) {
    oracle::Gen gen(107);
    for (int i = 0; i < kCases; i++) {
        size_t n = gen.index(2, 4);
        auto r = build_tensor_response(gen.params(n, 0.2));
        ProbDist t(n, gen.probs(size_t{1} << n));
        MeasurementPlan p;
        p.total_shots = static_cast<int64_t>(gen.index(20, 2000));
        p.strategy = static_cast<Strategy>(gen.index(0, 2));
        p.unfold.method = gen.index(0, 1) ? UnfoldMethod::ibu : UnfoldMethod::matrix_inversion;
        p.unfold.ibu_iterations = 20;
        p.rng_seed = gen.rng();
        auto a = run_strategy(t, r, p);
        auto b = run_strategy(t, r, p);
        ASSERT_EQ(a.corrected, b.corrected) << "case " << i;
        ASSERT_EQ(a.mask, b.mask) << "case " << i;
    }
}

}  // namespace
}  // namespace rebal
