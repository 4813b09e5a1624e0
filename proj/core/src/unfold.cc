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

#include "rebal/unfold.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "rebal/error.h"

namespace rebal {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> as_eigen(const ResponseMatrix &r) {
    return Eigen::Map<const RowMajorMatrix>(r.entries().data(), static_cast<Eigen::Index>(r.dim()),
                                            static_cast<Eigen::Index>(r.dim()));
}

void check_dims(const CountsHistogram &m, const ResponseMatrix &r) {
    if (m.n_qubits() != r.n_qubits()) {
        throw DimensionError(fmt::format("histogram has {} qubits but the response matrix has {}", m.n_qubits(),
                                         r.n_qubits()));
    }
}

}  // namespace

void UnfoldConfig::validate() const {
    if (ibu_iterations < 1) {
        throw ValidationError("IBU needs at least one iteration");
    }
    if (!(max_condition >= 1)) {
        throw ValidationError("condition number bound must be at least 1");
    }
}

const char *to_string(UnfoldMethod method) {
    switch (method) {
        case UnfoldMethod::matrix_inversion:
            return "matrix_inversion";
        case UnfoldMethod::ibu:
            return "ibu";
    }
    return "?";
}

UnfoldMethod parse_unfold_method(const std::string &name) {
    if (name == "matrix_inversion" || name == "inversion") {
        return UnfoldMethod::matrix_inversion;
    }
    if (name == "ibu") {
        return UnfoldMethod::ibu;
    }
    throw ValidationError("unknown unfolding method '" + name + "' (expected matrix_inversion or ibu)");
}

double condition_report(const ResponseMatrix &response) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(as_eigen(response));
    const auto &sv = svd.singularValues();
    double smallest = sv(sv.size() - 1);
    if (smallest <= 0) {
        return std::numeric_limits<double>::infinity();
    }
    return sv(0) / smallest;
}

CountsHistogram matrix_inverse_unfold(const CountsHistogram &measured, const ResponseMatrix &response,
                                      double max_condition) {
    check_dims(measured, response);
    double cond = condition_report(response);
    if (!(cond <= max_condition)) {
        throw NumericalError(fmt::format("response matrix condition number {} exceeds the bound {}", cond,
                                         max_condition));
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(as_eigen(response));
    Eigen::Map<const Eigen::VectorXd> m(measured.counts().data(), static_cast<Eigen::Index>(measured.size()));
    Eigen::VectorXd t = lu.solve(m);
    return CountsHistogram(measured.n_qubits(), std::vector<double>(t.data(), t.data() + t.size()));
}

CountsHistogram ibu_unfold(const CountsHistogram &measured, const ResponseMatrix &response, int iterations,
                           const std::optional<ProbDist> &prior) {
    check_dims(measured, response);
    if (iterations < 1) {
        throw ValidationError("IBU needs at least one iteration");
    }
    if (measured.has_negative_entries()) {
        throw ValidationError("IBU requires a nonnegative measured histogram");
    }
    double total = measured.total();
    if (!(total > 0)) {
        throw ValidationError("IBU requires a measured histogram with positive total");
    }
    if (prior && prior->n_qubits() != measured.n_qubits()) {
        throw DimensionError("IBU prior width does not match the histogram");
    }

    size_t dim = response.dim();
    auto m = measured.counts();
    std::vector<double> t(dim);
    for (size_t i = 0; i < dim; i++) {
        t[i] = total * (prior ? (*prior)[i] : 1.0 / static_cast<double>(dim));
    }

    std::vector<double> ratio(dim);
    std::vector<double> update(dim);
    for (int k = 0; k < iterations; k++) {
        // ratio_j = m_j / (R t)_j
        for (size_t j = 0; j < dim; j++) {
            if (m[j] == 0) {
                ratio[j] = 0;
                continue;
            }
            auto row = response.row(j);
            double folded = 0;
            for (size_t l = 0; l < dim; l++) {
                folded += row[l] * t[l];
            }
            if (!(folded > 0)) {
                throw NumericalError(fmt::format(
                    "IBU iteration {}: measured bin {} has {} counts but zero predicted weight", k, j, m[j]));
            }
            ratio[j] = m[j] / folded;
        }
        // t_i <- t_i * sum_j R_ji ratio_j
        std::fill(update.begin(), update.end(), 0.0);
        for (size_t j = 0; j < dim; j++) {
            if (ratio[j] == 0) {
                continue;
            }
            auto row = response.row(j);
            double rj = ratio[j];
            for (size_t i = 0; i < dim; i++) {
                update[i] += row[i] * rj;
            }
        }
        for (size_t i = 0; i < dim; i++) {
            t[i] *= update[i];
        }
    }
    return CountsHistogram(measured.n_qubits(), std::move(t));
}

CountsHistogram unfold(const CountsHistogram &measured, const ResponseMatrix &response, const UnfoldConfig &config) {
    config.validate();
    switch (config.method) {
        case UnfoldMethod::matrix_inversion:
            return matrix_inverse_unfold(measured, response, config.max_condition);
        case UnfoldMethod::ibu:
            return ibu_unfold(measured, response, config.ibu_iterations);
    }
    throw ValidationError("unknown unfolding method");
}

}  // namespace rebal
