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

#include "rebal/rng.h"

#include <cmath>
#include <string>

#include "rebal/error.h"

namespace rebal {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

uint64_t derive_seed(uint64_t base, uint64_t stream) {
    return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

std::vector<int64_t> sample_multinomial(Rng &rng, int64_t trials, std::span<const double> weights) {
    if (trials < 0) {
        throw ValidationError("number of multinomial trials must be nonnegative");
    }
    std::vector<int64_t> out(weights.size(), 0);
    if (weights.empty()) {
        if (trials > 0) {
            throw ValidationError("cannot sample from an empty set of outcomes");
        }
        return out;
    }
    double remaining_weight = 0;
    for (size_t k = 0; k < weights.size(); k++) {
        if (!(weights[k] >= 0) || !std::isfinite(weights[k])) {
            throw ValidationError("multinomial weight " + std::to_string(k) + " is negative or not finite");
        }
        remaining_weight += weights[k];
    }
    if (trials > 0 && !(remaining_weight > 0)) {
        throw ValidationError("multinomial weights have no positive entry");
    }

    int64_t remaining = trials;
    size_t last_positive = weights.size() - 1;
    while (last_positive > 0 && weights[last_positive] == 0) {
        last_positive--;
    }
    for (size_t k = 0; k < last_positive && remaining > 0; k++) {
        if (weights[k] > 0) {
            double p = std::min(1.0, weights[k] / remaining_weight);
            std::binomial_distribution<int64_t> dist(remaining, p);
            out[k] = dist(rng);
            remaining -= out[k];
        }
        remaining_weight -= weights[k];
        if (!(remaining_weight > 0)) {
            break;
        }
    }
    out[last_positive] += remaining;
    return out;
}

}  // namespace rebal
