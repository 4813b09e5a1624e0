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

#include "rebal/histogram.h"

#include <string>

#include "rebal/error.h"

namespace rebal {

namespace {

void check_mask_width(size_t n_qubits, const FlipMask &mask) {
    if (mask.n_qubits() != n_qubits) {
        throw DimensionError("flip mask is " + std::to_string(mask.n_qubits()) + " qubits wide but the register has " +
                             std::to_string(n_qubits));
    }
}

std::vector<double> permuted(std::span<const double> in, uint64_t mask) {
    std::vector<double> out(in.size());
    for (size_t s = 0; s < in.size(); s++) {
        out[s] = in[s ^ mask];
    }
    return out;
}

std::vector<double> marginals_of(size_t n_qubits, std::span<const double> weights, double total) {
    if (!(total > 0)) {
        throw ValidationError("qubit marginals are undefined for a histogram with nonpositive total");
    }
    std::vector<double> out(n_qubits, 0.0);
    for (size_t s = 0; s < weights.size(); s++) {
        for (size_t q = 0; q < n_qubits; q++) {
            if ((s >> q) & 1) {
                out[q] += weights[s];
            }
        }
    }
    for (double &m : out) {
        m /= total;
    }
    return out;
}

double index_mean(std::span<const double> weights, double total) {
    if (!(total > 0)) {
        throw ValidationError("observable is undefined for a histogram with nonpositive total");
    }
    double acc = 0;
    for (size_t s = 0; s < weights.size(); s++) {
        acc += weights[s] * static_cast<double>(s);
    }
    return acc / total;
}

}  // namespace

CountsHistogram xor_permute(const CountsHistogram &h, const FlipMask &mask) {
    check_mask_width(h.n_qubits(), mask);
    return CountsHistogram(h.n_qubits(), permuted(h.counts(), mask.bits()));
}

ProbDist xor_permute(const ProbDist &p, const FlipMask &mask) {
    check_mask_width(p.n_qubits(), mask);
    return ProbDist(p.n_qubits(), permuted(p.probs(), mask.bits()));
}

std::vector<double> qubit_marginals(const CountsHistogram &h) {
    return marginals_of(h.n_qubits(), h.counts(), h.total());
}

std::vector<double> qubit_marginals(const ProbDist &p) {
    return marginals_of(p.n_qubits(), p.probs(), 1.0);
}

double observable_base10(const CountsHistogram &h) {
    return index_mean(h.counts(), h.total());
}

double observable_base10(const ProbDist &p) {
    return index_mean(p.probs(), 1.0);
}

double counts_in_state(const CountsHistogram &h, StateIndex s) {
    if (s.value >= h.size()) {
        throw DimensionError("state " + std::to_string(s.value) + " out of range for " +
                             std::to_string(h.n_qubits()) + " qubits");
    }
    return h[s.value];
}

}  // namespace rebal
