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

#include "rebal/noise_model.h"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rebal/error.h"

namespace rebal {

ResponseMatrix::ResponseMatrix(size_t n_qubits, std::vector<double> entries, double column_tolerance)
    : n_qubits_(n_qubits), dim_(num_states(n_qubits)), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw DimensionError(fmt::format("response matrix over {} qubits needs {}x{} entries, got {}", n_qubits, dim_,
                                         dim_, entries_.size()));
    }
    std::vector<double> col_sums(dim_, 0.0);
    for (size_t m = 0; m < dim_; m++) {
        for (size_t t = 0; t < dim_; t++) {
            double v = entries_[m * dim_ + t];
            if (!(v >= 0 && v <= 1)) {
                throw ValidationError(
                    fmt::format("response matrix entry at row {} column {} is {}, outside [0, 1]", m, t, v));
            }
            col_sums[t] += v;
        }
    }
    for (size_t t = 0; t < dim_; t++) {
        if (std::abs(col_sums[t] - 1) > column_tolerance) {
            throw ValidationError(fmt::format("response matrix column {} sums to {}, expected 1 (tolerance {})", t,
                                              col_sums[t], column_tolerance));
        }
    }
}

ResponseMatrix ResponseMatrix::identity(size_t n_qubits) {
    size_t dim = num_states(n_qubits);
    std::vector<double> e(dim * dim, 0.0);
    for (size_t s = 0; s < dim; s++) {
        e[s * dim + s] = 1;
    }
    return ResponseMatrix(n_qubits, std::move(e));
}

std::vector<double> ResponseMatrix::column(size_t truth) const {
    std::vector<double> out(dim_);
    for (size_t m = 0; m < dim_; m++) {
        out[m] = at(m, truth);
    }
    return out;
}

std::vector<double> ResponseMatrix::apply(std::span<const double> truth) const {
    if (truth.size() != dim_) {
        throw DimensionError(fmt::format("cannot apply a {}-state response to a vector of length {}", dim_,
                                         truth.size()));
    }
    std::vector<double> out(dim_, 0.0);
    for (size_t m = 0; m < dim_; m++) {
        const double *r = &entries_[m * dim_];
        double acc = 0;
        for (size_t t = 0; t < dim_; t++) {
            acc += r[t] * truth[t];
        }
        out[m] = acc;
    }
    return out;
}

ResponseMatrix ResponseMatrix::xor_conjugated(const FlipMask &mask) const {
    if (mask.n_qubits() != n_qubits_) {
        throw DimensionError("flip mask width does not match the response matrix");
    }
    uint64_t f = mask.bits();
    std::vector<double> e(dim_ * dim_);
    for (size_t m = 0; m < dim_; m++) {
        for (size_t t = 0; t < dim_; t++) {
            e[m * dim_ + t] = at(m ^ f, t ^ f);
        }
    }
    return ResponseMatrix(n_qubits_, std::move(e));
}

ResponseMatrix build_tensor_response(std::span<const QubitNoiseParams> params) {
    size_t n = params.size();
    size_t dim = num_states(n);
    for (const auto &p : params) {
        p.validate();
    }
    std::vector<double> e(dim * dim);
    for (size_t m = 0; m < dim; m++) {
        for (size_t t = 0; t < dim; t++) {
            double prob = 1;
            for (size_t q = 0; q < n; q++) {
                bool mb = (m >> q) & 1;
                bool tb = (t >> q) & 1;
                const auto &p = params[q];
                if (tb) {
                    prob *= mb ? 1 - p.eps10 : p.eps10;
                } else {
                    prob *= mb ? p.eps01 : 1 - p.eps01;
                }
            }
            e[m * dim + t] = prob;
        }
    }
    return ResponseMatrix(n, std::move(e));
}

ResponseMatrix estimate_response(const ResponseMatrix &true_response, int64_t shots_per_state, Rng &rng) {
    if (shots_per_state < 1) {
        throw ValidationError("calibration needs at least one shot per basis state");
    }
    size_t dim = true_response.dim();
    std::vector<double> e(dim * dim);
    for (size_t t = 0; t < dim; t++) {
        auto counts = sample_multinomial(rng, shots_per_state, true_response.column(t));
        for (size_t m = 0; m < dim; m++) {
            e[m * dim + t] = static_cast<double>(counts[m]) / static_cast<double>(shots_per_state);
        }
    }
    return ResponseMatrix(true_response.n_qubits(), std::move(e));
}

ResponseMatrix estimate_response(const ResponseMatrix &true_response, int64_t shots_per_state, uint64_t seed) {
    Rng rng(seed);
    return estimate_response(true_response, shots_per_state, rng);
}

CountsHistogram sample_measured(const ProbDist &truth, const ResponseMatrix &response, int64_t shots, Rng &rng) {
    if (truth.n_qubits() != response.n_qubits()) {
        throw DimensionError(fmt::format("distribution has {} qubits but the response matrix has {}",
                                         truth.n_qubits(), response.n_qubits()));
    }
    if (shots < 0) {
        throw ValidationError("shot count must be nonnegative");
    }
    auto draw = sample_multinomial(rng, shots, response.apply(truth.probs()));
    return CountsHistogram(truth.n_qubits(), std::vector<double>(draw.begin(), draw.end()));
}

CountsHistogram sample_measured(const ProbDist &truth, const ResponseMatrix &response, int64_t shots, uint64_t seed) {
    Rng rng(seed);
    return sample_measured(truth, response, shots, rng);
}

std::map<size_t, double> diag_by_zero_count(const ResponseMatrix &response) {
    size_t n = response.n_qubits();
    std::vector<double> sum(n + 1, 0.0);
    std::vector<size_t> members(n + 1, 0);
    for (size_t s = 0; s < response.dim(); s++) {
        size_t zeros = n - static_cast<size_t>(std::popcount(s));
        sum[zeros] += response.at(s, s);
        members[zeros]++;
    }
    std::map<size_t, double> out;
    for (size_t k = 0; k <= n; k++) {
        out[k] = sum[k] / static_cast<double>(members[k]);
    }
    return out;
}

std::vector<QubitNoiseParams> draw_synthetic_params(const SyntheticNoiseSpec &spec, uint64_t seed) {
    num_states(spec.n_qubits);
    auto check_range = [](double lo, double hi, const char *name) {
        if (!(lo >= 0 && lo <= hi && hi <= 1)) {
            throw ValidationError(fmt::format("{} range [{}, {}] is not a sub-interval of [0, 1]", name, lo, hi));
        }
    };
    check_range(spec.eps10_min, spec.eps10_max, "eps10");
    check_range(spec.eps01_min, spec.eps01_max, "eps01");
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<QubitNoiseParams> out(spec.n_qubits);
    for (auto &p : out) {
        p.eps10 = spec.eps10_min + (spec.eps10_max - spec.eps10_min) * unit(rng);
        p.eps01 = spec.eps01_min + (spec.eps01_max - spec.eps01_min) * unit(rng);
    }
    return out;
}

ResponseMatrix parse_response_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(fmt::format("calibration file is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("entries")) {
        throw ParseError("calibration file must be an object with \"n_qubits\" and \"entries\"");
    }
    if (!doc["n_qubits"].is_number_unsigned()) {
        throw ParseError("\"n_qubits\" must be a positive integer");
    }
    const auto &rows = doc["entries"];
    if (!rows.is_array()) {
        throw ParseError("\"entries\" must be an array of rows");
    }
    size_t dim = rows.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw ParseError(fmt::format("\"entries\" has {} rows; expected a power of two of at least 2", dim));
    }
    size_t n = static_cast<size_t>(std::countr_zero(dim));
    if (doc["n_qubits"].get<size_t>() != n) {
        throw ParseError(fmt::format("\"n_qubits\" is {} but \"entries\" has {} rows (n_qubits {})",
                                     doc["n_qubits"].get<size_t>(), dim, n));
    }
    std::vector<double> e(dim * dim);
    for (size_t m = 0; m < dim; m++) {
        const auto &row = rows[m];
        if (!row.is_array() || row.size() != dim) {
            throw ParseError(fmt::format("row {} must be an array of {} numbers", m, dim));
        }
        for (size_t t = 0; t < dim; t++) {
            if (!row[t].is_number()) {
                throw ParseError(fmt::format("entry at row {} column {} is not a number", m, t));
            }
            e[m * dim + t] = row[t].get<double>();
        }
    }
    return ResponseMatrix(n, std::move(e), kLoadColumnTolerance);
}

std::string response_to_json(const ResponseMatrix &response) {
    std::string out = fmt::format("{{\n  \"n_qubits\": {},\n  \"entries\": [\n", response.n_qubits());
    size_t dim = response.dim();
    for (size_t m = 0; m < dim; m++) {
        out += "    [";
        for (size_t t = 0; t < dim; t++) {
            if (t) {
                out += ", ";
            }
            out += fmt::format("{}", response.at(m, t));
        }
        out += m + 1 < dim ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

ResponseMatrix load_response(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(fmt::format("cannot open calibration file '{}'", path.string()));
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_response_json(buf.str());
    } catch (const ParseError &e) {
        throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const ValidationError &e) {
        throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void save_response(const ResponseMatrix &response, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot write calibration file '{}'", path.string()));
    }
    out << response_to_json(response);
    if (!out.flush()) {
        throw IoError(fmt::format("failed writing calibration file '{}'", path.string()));
    }
}

}  // namespace rebal
