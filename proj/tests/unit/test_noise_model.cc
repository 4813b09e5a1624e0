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
#include <filesystem>
#include <fstream>

#include "rebal/error.h"
#include "rebal/noise_model.h"
#include "rebal/rng.h"
#include "support/oracles.h"

namespace rebal {
namespace {

TEST(Rng, DeriveSeedSeparatesStreams) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(5, 7), derive_seed(5, 7));
}

TEST(Rng, MultinomialConservesTrials) {
    Rng rng = make_rng(4, 0);
    std::vector<double> w{0.1, 0, 0.5, 0.4};
    for (int i = 0; i < 50; i++) {
        auto d = sample_multinomial(rng, 1000, w);
        EXPECT_EQ(d[0] + d[1] + d[2] + d[3], 1000);
        EXPECT_EQ(d[1], 0);
    }
}

TEST(Rng, MultinomialMoments) {
    Rng rng = make_rng(9, 0);
    std::vector<double> w{0.2, 0.3, 0.5};
    const int reps = 20000;
    const int64_t n = 100;
    double sum = 0, sq = 0;
    for (int i = 0; i < reps; i++) {
        double x = double(sample_multinomial(rng, n, w)[1]);
        sum += x;
        sq += x * x;
    }
    double mean = sum / reps;
    double var = sq / reps - mean * mean;
    EXPECT_NEAR(mean, 30, 5 * std::sqrt(21.0 / reps));
    EXPECT_NEAR(var, 21, 1.0);
}

TEST(NoiseModel, TensorMatchesKronecker) {
    oracle::Gen gen(11);
    for (size_t n = 1; n <= 4; n++) {
        auto params = gen.params(n);
        auto r = build_tensor_response(params);
        auto want = oracle::tensor_response(params);
        for (size_t m = 0; m < r.dim(); m++)
            for (size_t t = 0; t < r.dim(); t++)
                EXPECT_NEAR(r.at(m, t), want[m][t], 1e-15);
    }
}

TEST(NoiseModel, SingleQubitEntries) {
    auto r = build_tensor_response(std::vector<QubitNoiseParams>{{0.01, 0.1}});
    EXPECT_DOUBLE_EQ(r.at(1, 0), 0.01);
    EXPECT_DOUBLE_EQ(r.at(0, 1), 0.1);
    EXPECT_DOUBLE_EQ(r.at(0, 0), 0.99);
}

TEST(NoiseModel, RejectsBadMatrices) {
    EXPECT_THROW(ResponseMatrix(1, {1, 0, 0}), DimensionError);
    EXPECT_THROW(ResponseMatrix(1, {0.5, 0, 0.4, 1}), ValidationError);
    EXPECT_THROW(ResponseMatrix(1, {1.2, 0, -0.2, 1}), ValidationError);
    try {
        ResponseMatrix(1, {1, 0.3, 0, 0.6});
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("column 1"), std::string::npos) << e.what();
    }
}

TEST(NoiseModel, XorConjugated) {
    oracle::Gen gen(12);
    auto r = build_tensor_response(gen.params(3));
    FlipMask mask(0b101, 3);
    auto c = r.xor_conjugated(mask);
    for (size_t m = 0; m < 8; m++)
        for (size_t t = 0; t < 8; t++)
            EXPECT_EQ(c.at(m, t), r.at(m ^ 5, t ^ 5));
}

TEST(NoiseModel, EstimateIsColumnStochasticAndConsistent) {
    auto r = build_tensor_response(std::vector<QubitNoiseParams>{{0.02, 0.1}, {0.01, 0.2}});
    auto est = estimate_response(r, 200000, 3);
    for (size_t t = 0; t < 4; t++) {
        double s = 0;
        for (size_t m = 0; m < 4; m++) {
            s += est.at(m, t);
            EXPECT_NEAR(est.at(m, t), r.at(m, t), 0.005);
        }
        EXPECT_NEAR(s, 1, 1e-12);
    }
    EXPECT_THROW(estimate_response(r, 0, 3), ValidationError);
}

TEST(NoiseModel, SampleMeasuredIdentity) {
    auto r = ResponseMatrix::identity(3);
    auto h = sample_measured(ProbDist::point_mass(3, StateIndex{5}), r, 1000, 1);
    EXPECT_EQ(h[5], 1000);
    EXPECT_EQ(h.total(), 1000);
}

TEST(NoiseModel, SampleMeasuredSeeded) {
    auto r = build_tensor_response(std::vector<QubitNoiseParams>(3, {0.05, 0.1}));
    auto a = sample_measured(ProbDist::uniform(3), r, 1000, 77);
    auto b = sample_measured(ProbDist::uniform(3), r, 1000, 77);
    EXPECT_EQ(a, b);
}

TEST(NoiseModel, DiagByZeroCountIdentity) {
    auto d = diag_by_zero_count(ResponseMatrix::identity(4));
    EXPECT_EQ(d.size(), 5u);
    for (const auto &[z, p] : d) {
        EXPECT_EQ(p, 1.0);
    }
}

TEST(NoiseModel, DiagByZeroCountProduct) {
    // Uniform qubits: the diagonal for a state with z zeros is
    // (1 - eps01)^z (1 - eps10)^(n - z).
    auto r = build_tensor_response(std::vector<QubitNoiseParams>(3, {0.01, 0.1}));
    auto d = diag_by_zero_count(r);
    for (size_t z = 0; z <= 3; z++) {
        EXPECT_NEAR(d.at(z), std::pow(0.99, z) * std::pow(0.9, 3 - z), 1e-15);
    }
}

TEST(NoiseModel, SyntheticParamsInRange) {
    SyntheticNoiseSpec spec;
    auto p = draw_synthetic_params(spec, 5);
    ASSERT_EQ(p.size(), 5u);
    for (const auto &q : p) {
        EXPECT_GE(q.eps10, spec.eps10_min);
        EXPECT_LE(q.eps10, spec.eps10_max);
        EXPECT_GE(q.eps01, spec.eps01_min);
        EXPECT_LE(q.eps01, spec.eps01_max);
    }
    EXPECT_EQ(p.front().eps10, draw_synthetic_params(spec, 5).front().eps10);
}

TEST(NoiseModel, JsonRoundTripIsExact) {
    oracle::Gen gen(13);
    auto r = build_tensor_response(gen.params(3));
    auto back = parse_response_json(response_to_json(r));
    EXPECT_EQ(back, r);
}

TEST(NoiseModel, JsonErrors) {
    EXPECT_THROW(parse_response_json("{"), ParseError);
    EXPECT_THROW(parse_response_json(R"({"n_qubits": 1, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})"),
                 ParseError);
    EXPECT_THROW(parse_response_json(R"({"n_qubits": 2, "entries": [[1, 0], [0, 1]]})"), ParseError);
    EXPECT_THROW(parse_response_json(R"({"n_qubits": 1, "entries": [[1, "x"], [0, 1]]})"), ParseError);
    EXPECT_THROW(parse_response_json(R"({"n_qubits": 1, "entries": [[0.9, 0], [0, 1]]})"), ValidationError);
    EXPECT_THROW(load_response("/nonexistent/calibration.json"), IoError);
}

TEST(NoiseModel, SaveAndLoad) {
    auto path = std::filesystem::temp_directory_path() / "rebal_test_response.json";
    auto r = build_tensor_response(std::vector<QubitNoiseParams>{{0.01, 0.07}, {0.003, 0.11}});
    save_response(r, path);
    EXPECT_EQ(load_response(path), r);
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace rebal
