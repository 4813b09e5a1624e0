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

#ifndef REBAL_RNG_H
#define REBAL_RNG_H

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rebal {

using Rng = std::mt19937_64;

/// Seed of an independent stream, keyed by (base seed, stream index).
///
/// Ensemble repetitions and the sub-steps of a single run each draw from their
/// own stream, so results never depend on scheduling order.
uint64_t derive_seed(uint64_t base, uint64_t stream);

inline Rng make_rng(uint64_t base, uint64_t stream) {
    return Rng(derive_seed(base, stream));
}

/// One multinomial draw of `trials` outcomes over categories with the given
/// (not necessarily normalized) nonnegative weights. Implemented as a chain of
/// conditional binomials.
std::vector<int64_t> sample_multinomial(Rng &rng, int64_t trials, std::span<const double> weights);

}  // namespace rebal

#endif
