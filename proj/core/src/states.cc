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

#include "rebal/states.h"

#include <cmath>
#include <string>
#include <vector>

#include "rebal/error.h"

namespace rebal {

ProbDist inverted_w_dist(size_t n_qubits) {
    if (n_qubits < 2) {
        throw ValidationError("the inverted W state needs at least 2 qubits");
    }
    size_t dim = num_states(n_qubits);
    std::vector<double> p(dim, 0.0);
    double weight = 1.0 / static_cast<double>(n_qubits);
    for (size_t q = 0; q < n_qubits; q++) {
        p[(dim - 1) ^ (size_t{1} << q)] = weight;
    }
    return ProbDist(n_qubits, std::move(p));
}

double grover_success_probability(size_t n_qubits, int64_t iterations) {
    if (iterations < 0) {
        throw ValidationError("Grover iteration count must be nonnegative");
    }
    double dim = static_cast<double>(num_states(n_qubits));
    double theta = std::asin(1 / std::sqrt(dim));
    double s = std::sin(static_cast<double>(2 * iterations + 1) * theta);
    return s * s;
}

ProbDist grover_dist(size_t n_qubits, StateIndex target, int64_t iterations) {
    size_t dim = num_states(n_qubits);
    if (target.value >= dim) {
        throw DimensionError("Grover target " + std::to_string(target.value) + " out of range for " +
                             std::to_string(n_qubits) + " qubits");
    }
    double hit = grover_success_probability(n_qubits, iterations);
    std::vector<double> p(dim, (1 - hit) / static_cast<double>(dim - 1));
    p[target.value] = hit;
    return ProbDist(n_qubits, std::move(p));
}

double gaussian_grid_point(size_t n_bits, size_t s) {
    double last = static_cast<double>(num_states(n_bits) - 1);
    return -1 + 2 * static_cast<double>(s) / last;
}

ProbDist gaussian_dist(double mu, double sigma, size_t n_bits) {
    if (!(sigma > 0) || !std::isfinite(sigma)) {
        throw ValidationError("Gaussian width must be positive");
    }
    if (!std::isfinite(mu)) {
        throw ValidationError("Gaussian mean must be finite");
    }
    size_t dim = num_states(n_bits);
    std::vector<double> p(dim);
    double norm = 0;
    for (size_t s = 0; s < dim; s++) {
        double z = (gaussian_grid_point(n_bits, s) - mu) / sigma;
        p[s] = std::exp(-0.5 * z * z);
        norm += p[s];
    }
    if (!(norm > 0)) {
        throw ValidationError("Gaussian has no mass on the grid (mean too far outside [-1, 1])");
    }
    for (double &v : p) {
        v /= norm;
    }
    return ProbDist(n_bits, std::move(p));
}

}  // namespace rebal
