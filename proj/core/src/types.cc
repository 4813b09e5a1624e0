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

#include "rebal/types.h"

#include <bit>
#include <cmath>
#include <string>

#include "rebal/error.h"

namespace rebal {

size_t num_states(size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DimensionError("register width must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                             std::to_string(n_qubits));
    }
    return size_t{1} << n_qubits;
}

size_t StateIndex::popcount() const {
    return static_cast<size_t>(std::popcount(value));
}

std::vector<uint8_t> StateIndex::bits(size_t n_qubits) const {
    std::vector<uint8_t> out(n_qubits);
    for (size_t q = 0; q < n_qubits; q++) {
        out[q] = bit(q);
    }
    return out;
}

StateIndex StateIndex::from_bits(std::span<const uint8_t> bits) {
    if (bits.size() > 64) {
        throw DimensionError("at most 64 bits fit in a state index");
    }
    uint64_t v = 0;
    for (size_t q = 0; q < bits.size(); q++) {
        if (bits[q] > 1) {
            throw ValidationError("bit values must be 0 or 1");
        }
        v |= uint64_t{bits[q]} << q;
    }
    return StateIndex{v};
}

std::string StateIndex::to_bitstring(size_t n_qubits) const {
    std::string out(n_qubits, '0');
    for (size_t q = 0; q < n_qubits; q++) {
        if (bit(q)) {
            out[n_qubits - 1 - q] = '1';
        }
    }
    return out;
}

FlipMask::FlipMask(uint64_t bits, size_t n_qubits) : bits_(bits), n_qubits_(n_qubits) {
    size_t dim = num_states(n_qubits);
    if (bits >= dim) {
        throw DimensionError("flip mask " + std::to_string(bits) + " does not fit in " + std::to_string(n_qubits) +
                             " qubits");
    }
}

FlipMask FlipMask::all(size_t n_qubits) {
    return FlipMask(num_states(n_qubits) - 1, n_qubits);
}

std::string FlipMask::to_string() const {
    return "0b" + StateIndex{bits_}.to_bitstring(n_qubits_);
}

void QubitNoiseParams::validate() const {
    auto in_unit = [](double p) { return p >= 0 && p <= 1; };
    if (!in_unit(eps01) || !in_unit(eps10)) {
        throw ValidationError("readout error probabilities must lie in [0, 1] (eps01=" + std::to_string(eps01) +
                              ", eps10=" + std::to_string(eps10) + ")");
    }
}

CountsHistogram::CountsHistogram(size_t n_qubits, std::vector<double> counts)
    : n_qubits_(n_qubits), counts_(std::move(counts)) {
    if (counts_.size() != num_states(n_qubits)) {
        throw DimensionError("histogram over " + std::to_string(n_qubits) + " qubits needs " +
                             std::to_string(num_states(n_qubits)) + " entries, got " +
                             std::to_string(counts_.size()));
    }
    for (double c : counts_) {
        if (!std::isfinite(c)) {
            throw ValidationError("histogram entries must be finite");
        }
    }
}

CountsHistogram CountsHistogram::zeros(size_t n_qubits) {
    return CountsHistogram(n_qubits, std::vector<double>(num_states(n_qubits), 0.0));
}

double CountsHistogram::total() const {
    // Neumaier summation; corrected histograms mix signs.
    double sum = 0;
    double comp = 0;
    for (double c : counts_) {
        double t = sum + c;
        if (std::abs(sum) >= std::abs(c)) {
            comp += (sum - t) + c;
        } else {
            comp += (c - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

bool CountsHistogram::is_raw() const {
    for (double c : counts_) {
        if (c < 0 || c != std::floor(c)) {
            return false;
        }
    }
    return true;
}

bool CountsHistogram::has_negative_entries() const {
    for (double c : counts_) {
        if (c < 0) {
            return true;
        }
    }
    return false;
}

CountsHistogram CountsHistogram::scaled(double factor) const {
    std::vector<double> out = counts_;
    for (double &c : out) {
        c *= factor;
    }
    return CountsHistogram(n_qubits_, std::move(out));
}

ProbDist::ProbDist(size_t n_qubits, std::vector<double> probs) : n_qubits_(n_qubits), probs_(std::move(probs)) {
    if (probs_.size() != num_states(n_qubits)) {
        throw DimensionError("distribution over " + std::to_string(n_qubits) + " qubits needs " +
                             std::to_string(num_states(n_qubits)) + " entries, got " +
                             std::to_string(probs_.size()));
    }
    double sum = 0;
    for (size_t s = 0; s < probs_.size(); s++) {
        double p = probs_[s];
        if (!(p >= 0 && p <= 1)) {
            throw ValidationError("probability at state " + std::to_string(s) + " is outside [0, 1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1) > kNormTolerance) {
        throw ValidationError("probabilities sum to " + std::to_string(sum) + ", not 1");
    }
}

ProbDist ProbDist::uniform(size_t n_qubits) {
    size_t dim = num_states(n_qubits);
    return ProbDist(n_qubits, std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

ProbDist ProbDist::point_mass(size_t n_qubits, StateIndex s) {
    std::vector<double> p(num_states(n_qubits), 0.0);
    if (s.value >= p.size()) {
        throw DimensionError("state " + std::to_string(s.value) + " out of range");
    }
    p[s.value] = 1;
    return ProbDist(n_qubits, std::move(p));
}

CountsHistogram ProbDist::expected_counts(double total) const {
    std::vector<double> out = probs_;
    for (double &c : out) {
        c *= total;
    }
    return CountsHistogram(n_qubits_, std::move(out));
}

}  // namespace rebal
