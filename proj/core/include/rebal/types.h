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

#ifndef REBAL_TYPES_H
#define REBAL_TYPES_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rebal {

/// Registers are stored densely, so the width is bounded.
inline constexpr size_t kMaxQubits = 20;

/// Number of basis states of an n-qubit register. Throws DimensionError
/// unless 1 <= n <= kMaxQubits.
size_t num_states(size_t n_qubits);

/// A computational basis state. Bit q of `value` is the measured value of
/// qubit q, so qubit 0 is the least significant bit.
struct StateIndex {
    uint64_t value = 0;

    constexpr bool bit(size_t qubit) const {
        return (value >> qubit) & 1;
    }
    size_t popcount() const;

    std::vector<uint8_t> bits(size_t n_qubits) const;
    static StateIndex from_bits(std::span<const uint8_t> bits);

    /// Most significant qubit first, e.g. "01111" for value 15 with n = 5.
    std::string to_bitstring(size_t n_qubits) const;

    bool operator==(const StateIndex &) const = default;
};

/// Pre-measurement X gate placement. Bit q set means qubit q is flipped.
/// Acts on state indices by XOR.
class FlipMask {
   public:
    FlipMask(uint64_t bits, size_t n_qubits);

    static FlipMask none(size_t n_qubits) {
        return FlipMask(0, n_qubits);
    }
    static FlipMask all(size_t n_qubits);

    uint64_t bits() const {
        return bits_;
    }
    size_t n_qubits() const {
        return n_qubits_;
    }
    bool flips(size_t qubit) const {
        return (bits_ >> qubit) & 1;
    }
    StateIndex apply(StateIndex s) const {
        return StateIndex{s.value ^ bits_};
    }
    std::string to_string() const;

    bool operator==(const FlipMask &) const = default;

   private:
    uint64_t bits_;
    size_t n_qubits_;
};

/// Per-qubit asymmetric readout error probabilities.
struct QubitNoiseParams {
    double eps01 = 0;  ///< Pr(read 1 | prepared 0)
    double eps10 = 0;  ///< Pr(read 0 | prepared 1)

    /// Throws ValidationError unless both probabilities lie in [0, 1].
    void validate() const;
};

/// Occupation counts over all 2^n basis states.
///
/// Raw histograms coming out of sampling hold nonnegative integers. Corrected
/// histograms produced by unfolding are real-valued and, for matrix
/// inversion, may hold negative entries.
class CountsHistogram {
   public:
    CountsHistogram(size_t n_qubits, std::vector<double> counts);
    static CountsHistogram zeros(size_t n_qubits);

    size_t n_qubits() const {
        return n_qubits_;
    }
    size_t size() const {
        return counts_.size();
    }
    std::span<const double> counts() const {
        return counts_;
    }
    double operator[](size_t s) const {
        return counts_[s];
    }

    /// Sum of all entries, recomputed on every call.
    double total() const;

    bool is_raw() const;
    bool has_negative_entries() const;
    CountsHistogram scaled(double factor) const;

    bool operator==(const CountsHistogram &) const = default;

   private:
    size_t n_qubits_;
    std::vector<double> counts_;
};

/// Normalized probability mass function over 2^n basis states.
class ProbDist {
   public:
    static constexpr double kNormTolerance = 1e-12;

    /// Throws ValidationError if an entry falls outside [0, 1] or the entries
    /// do not sum to one within kNormTolerance.
    ProbDist(size_t n_qubits, std::vector<double> probs);

    static ProbDist uniform(size_t n_qubits);
    static ProbDist point_mass(size_t n_qubits, StateIndex s);

    size_t n_qubits() const {
        return n_qubits_;
    }
    size_t size() const {
        return probs_.size();
    }
    std::span<const double> probs() const {
        return probs_;
    }
    double operator[](size_t s) const {
        return probs_[s];
    }

    /// Expected histogram for `total` shots: probs scaled by total.
    CountsHistogram expected_counts(double total) const;

    bool operator==(const ProbDist &) const = default;

   private:
    size_t n_qubits_;
    std::vector<double> probs_;
};

}  // namespace rebal

#endif
