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

#ifndef REBAL_HISTOGRAM_H
#define REBAL_HISTOGRAM_H

#include <vector>

#include "rebal/types.h"

namespace rebal {

/// output[s] = input[s ^ mask] for every s. Undoes (or applies) a layer of X
/// gates on a histogram. Throws DimensionError if the mask width differs from
/// the register width.
CountsHistogram xor_permute(const CountsHistogram &h, const FlipMask &mask);
ProbDist xor_permute(const ProbDist &p, const FlipMask &mask);

/// Fraction of the total weight in which qubit q reads 1, for each q.
/// Throws ValidationError when the total is not positive.
std::vector<double> qubit_marginals(const CountsHistogram &h);
std::vector<double> qubit_marginals(const ProbDist &p);

/// Counts-weighted mean of the state index, i.e. the average integer value of
/// the measured bitstring with qubit q carrying weight 2^q.
double observable_base10(const CountsHistogram &h);
double observable_base10(const ProbDist &p);

/// counts[s]; throws DimensionError if s is out of range.
double counts_in_state(const CountsHistogram &h, StateIndex s);

}  // namespace rebal

#endif
