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

// Independent reference implementations used by the tests. Nothing here calls
// into the library except for its plain data types.

#ifndef REBAL_TESTS_ORACLES_H
#define REBAL_TESTS_ORACLES_H

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "rebal/types.h"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix kron(const Matrix &a, const Matrix &b) {
    size_t ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
    Matrix out(ra * rb, std::vector<double>(ca * cb));
    for (size_t i = 0; i < ra; i++)
        for (size_t j = 0; j < ca; j++)
            for (size_t k = 0; k < rb; k++)
                for (size_t l = 0; l < cb; l++)
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
    return out;
}

// Qubit 0 is the least significant bit, so it is the rightmost factor.
inline Matrix tensor_response(const std::vector<rebal::QubitNoiseParams> &params) {
    Matrix r{{1.0}};
    for (const auto &p : params) {
        Matrix single{{1 - p.eps01, p.eps10}, {p.eps01, 1 - p.eps10}};
        r = kron(single, r);
    }
    return r;
}

inline std::vector<double> matvec(const Matrix &m, const std::vector<double> &v) {
    std::vector<double> out(m.size());
    for (size_t i = 0; i < m.size(); i++)
        for (size_t j = 0; j < v.size(); j++)
            out[i] += m[i][j] * v[j];
    return out;
}

inline double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    double sa = 0, sb = 0, tv = 0;
    for (size_t i = 0; i < a.size(); i++) {
        sa += a[i];
        sb += b[i];
    }
    for (size_t i = 0; i < a.size(); i++) {
        tv += std::abs(a[i] / sa - b[i] / sb);
    }
    return tv / 2;
}

// Gate-level Grover: uniform superposition, then k rounds of phase oracle and
// inversion about the mean.
inline std::vector<double> grover_statevector(size_t n, uint64_t target, int k) {
    size_t dim = size_t{1} << n;
    std::vector<double> amp(dim, 1 / std::sqrt(double(dim)));
    for (int round = 0; round < k; round++) {
        amp[target] = -amp[target];
        double mean = 0;
        for (double a : amp) mean += a;
        mean /= double(dim);
        for (double &a : amp) a = 2 * mean - a;
    }
    std::vector<double> probs(dim);
    for (size_t s = 0; s < dim; s++) probs[s] = amp[s] * amp[s];
    return probs;
}

// Singular values of [[a, b], [c, d]] in closed form.
inline double condition_2x2(double a, double b, double c, double d) {
    double s1 = a * a + b * b + c * c + d * d;
    double det = a * d - b * c;
    double disc = std::sqrt(std::max(0.0, s1 * s1 - 4 * det * det));
    double big = std::sqrt((s1 + disc) / 2);
    double small = std::sqrt(std::max(0.0, (s1 - disc) / 2));
    return small == 0 ? INFINITY : big / small;
}

// Exact variance of sum_l c[l] X_l for X ~ Multinomial(n, p).
inline double linear_multinomial_variance(const std::array<double, 4> &c, const std::array<double, 4> &p, double n) {
    double mean = 0, second = 0;
    for (size_t l = 0; l < 4; l++) {
        mean += c[l] * p[l];
        second += c[l] * c[l] * p[l];
    }
    return n * (second - mean * mean);
}

inline std::vector<double> marginals_by_enumeration(const std::vector<double> &counts, size_t n) {
    std::vector<double> out(n);
    double total = 0;
    for (size_t s = 0; s < counts.size(); s++) {
        total += counts[s];
        for (size_t q = 0; q < n; q++)
            if ((s >> q) & 1) out[q] += counts[s];
    }
    for (double &v : out) v /= total;
    return out;
}

// Random helpers for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    size_t index(size_t lo, size_t hi) {
        return std::uniform_int_distribution<size_t>(lo, hi)(rng);
    }
    std::vector<rebal::QubitNoiseParams> params(size_t n, double max_eps = 0.2) {
        std::vector<rebal::QubitNoiseParams> out;
        for (size_t q = 0; q < n; q++) out.push_back({uniform(0, max_eps), uniform(0, max_eps)});
        return out;
    }
    std::vector<double> probs(size_t dim) {
        std::vector<double> p(dim);
        double s = 0;
        for (double &v : p) {
            v = -std::log(uniform(1e-12, 1));
            s += v;
        }
        for (double &v : p) v /= s;
        return p;
    }
    std::vector<double> counts(size_t dim, double max_count = 1000) {
        std::vector<double> c(dim);
        for (double &v : c) v = std::floor(uniform(0, max_count));
        c[index(0, dim - 1)] += 1;
        return c;
    }
};

}  // namespace oracle

#endif
