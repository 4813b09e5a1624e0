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

#ifndef REBAL_STATES_H
#define REBAL_STATES_H

#include <cstdint>

#include "rebal/types.h"

namespace rebal {

// Ideal output distributions of the benchmark circuits, computed in closed
// form instead of by gate-level simulation.

/// Uniform superposition of the n basis states with exactly one zero bit.
ProbDist inverted_w_dist(size_t n_qubits);

/// Grover search with a single marked state after `iterations` rounds:
/// Pr(target) = sin^2((2k+1) theta) with sin(theta) = 2^(-n/2), and the
/// remaining mass spread evenly over the other states.
ProbDist grover_dist(size_t n_qubits, StateIndex target, int64_t iterations);

/// Success probability sin^2((2k+1) theta) of the closed form above.
double grover_success_probability(size_t n_qubits, int64_t iterations);

/// Gaussian with mean `mu` and width `sigma` evaluated on the uniform grid
/// x_s = -1 + 2 s / (2^n - 1) and renormalized over the grid.
ProbDist gaussian_dist(double mu, double sigma, size_t n_bits);

/// Grid point represented by state s in gaussian_dist.
double gaussian_grid_point(size_t n_bits, size_t s);

}  // namespace rebal

#endif
