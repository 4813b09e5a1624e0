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

#ifndef REBAL_UNFOLD_H
#define REBAL_UNFOLD_H

#include <optional>

#include "rebal/noise_model.h"
#include "rebal/types.h"

namespace rebal {

enum class UnfoldMethod { matrix_inversion, ibu };
enum class UnfoldPrior { uniform };

struct UnfoldConfig {
    UnfoldMethod method = UnfoldMethod::ibu;
    int ibu_iterations = 100;
    UnfoldPrior ibu_prior = UnfoldPrior::uniform;
    /// Matrix inversion refuses matrices whose condition number exceeds this.
    double max_condition = 1e12;

    void validate() const;
};

const char *to_string(UnfoldMethod method);
UnfoldMethod parse_unfold_method(const std::string &name);

/// R^-1 m by a linear solve. The result is real-valued and may contain
/// negative entries. Throws NumericalError if R is singular or its condition
/// number exceeds `max_condition`.
CountsHistogram matrix_inverse_unfold(const CountsHistogram &measured, const ResponseMatrix &response,
                                      double max_condition = 1e12);

/// Iterative Bayesian Unfolding.
///
/// Starting from t^0 = prior * total(m), each iteration applies Bayes' rule
/// with the current estimate as prior:
///
///     t^{k+1}_i = sum_j [ R_ji t^k_i / sum_l R_jl t^k_l ] m_j
///
/// The output is nonnegative and carries the same total as `measured`.
/// Throws ValidationError for a negative or zero-total `measured`, and
/// NumericalError if some bin with m_j > 0 has zero predicted weight.
CountsHistogram ibu_unfold(const CountsHistogram &measured, const ResponseMatrix &response, int iterations = 100,
                           const std::optional<ProbDist> &prior = std::nullopt);

/// Dispatches on config.method.
CountsHistogram unfold(const CountsHistogram &measured, const ResponseMatrix &response, const UnfoldConfig &config);

/// Ratio of the largest to the smallest singular value of R (infinity when
/// R is singular).
double condition_report(const ResponseMatrix &response);

}  // namespace rebal

#endif
