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

#ifndef REBAL_NOISE_MODEL_H
#define REBAL_NOISE_MODEL_H

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "rebal/rng.h"
#include "rebal/types.h"

namespace rebal {

/// Column-stochastic readout response matrix.
///
/// at(m, t) = Pr(measure m | true state t). Entries are stored row-major so
/// that row m is contiguous. The matrix is immutable once built.
class ResponseMatrix {
   public:
    static constexpr double kColumnTolerance = 1e-9;

    /// Throws DimensionError if `entries` is not 2^n x 2^n, and
    /// ValidationError if an entry is outside [0, 1] or a column sum deviates
    /// from one by more than `column_tolerance`.
    ResponseMatrix(size_t n_qubits, std::vector<double> entries, double column_tolerance = kColumnTolerance);

    static ResponseMatrix identity(size_t n_qubits);

    size_t n_qubits() const {
        return n_qubits_;
    }
    size_t dim() const {
        return dim_;
    }
    double at(size_t measured, size_t truth) const {
        return entries_[measured * dim_ + truth];
    }
    std::span<const double> row(size_t measured) const {
        return std::span<const double>(entries_).subspan(measured * dim_, dim_);
    }
    std::span<const double> entries() const {
        return entries_;
    }
    std::vector<double> column(size_t truth) const;

    /// R * v for a vector over true states.
    std::vector<double> apply(std::span<const double> truth) const;

    /// R'(m, t) = R(m ^ mask, t ^ mask): the same channel seen in a basis
    /// relabelled by a layer of X gates.
    ResponseMatrix xor_conjugated(const FlipMask &mask) const;

    bool operator==(const ResponseMatrix &) const = default;

   private:
    size_t n_qubits_;
    size_t dim_;
    std::vector<double> entries_;
};

/// Tensor-product readout channel: every qubit is misread independently.
ResponseMatrix build_tensor_response(std::span<const QubitNoiseParams> params);

/// Calibration by preparing every basis state `shots_per_state` times and
/// recording empirical frequencies.
ResponseMatrix estimate_response(const ResponseMatrix &true_response, int64_t shots_per_state, Rng &rng);
ResponseMatrix estimate_response(const ResponseMatrix &true_response, int64_t shots_per_state, uint64_t seed);

/// One multinomial draw of `shots` outcomes from R * t.
CountsHistogram sample_measured(const ProbDist &truth, const ResponseMatrix &response, int64_t shots, Rng &rng);
CountsHistogram sample_measured(const ProbDist &truth, const ResponseMatrix &response, int64_t shots, uint64_t seed);

/// Mean diagonal entry R(s, s) grouped by the number of zero bits in s.
std::map<size_t, double> diag_by_zero_count(const ResponseMatrix &response);

/// Draws per-qubit parameters uniformly from the given ranges.
struct SyntheticNoiseSpec {
    size_t n_qubits = 5;
    double eps10_min = 0.08;
    double eps10_max = 0.16;
    double eps01_min = 0.002;
    double eps01_max = 0.01;
};
std::vector<QubitNoiseParams> draw_synthetic_params(const SyntheticNoiseSpec &spec, uint64_t seed);

/// JSON calibration files: {"n_qubits": n, "entries": [[...], ...]} with
/// entries[m][t] = Pr(measure m | true t).
inline constexpr double kLoadColumnTolerance = 1e-6;
ResponseMatrix load_response(const std::filesystem::path &path);
void save_response(const ResponseMatrix &response, const std::filesystem::path &path);
ResponseMatrix parse_response_json(const std::string &text);
std::string response_to_json(const ResponseMatrix &response);

}  // namespace rebal

#endif
