// Copyright 2026 The symdisc Authors
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

// Test-only reference computations. Nothing here calls into the library's
// algebra beyond the ComplexMatrix container, so the values they produce
// are independent of the code under test.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "symdisc/cxmat.hpp"

namespace symdisc::testing {

using Complex = std::complex<double>;
using Mat2 = std::array<std::array<double, 2>, 2>;

inline Mat2 rot2(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {{{c, -s}, {s, c}}};
}

inline Mat2 mul2(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

inline Mat2 transpose2(const Mat2& a) { return {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}}; }

/// Plain nested-loop Kronecker product of real vectors.
inline std::vector<double> kron(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    for (double x : a)
        for (double y : b) out.push_back(x * y);
    return out;
}

/// Naive entry loop for a real matrix given as nested vectors.
inline std::vector<std::vector<double>> outer(const std::vector<double>& v) {
    std::vector<std::vector<double>> m(v.size(), std::vector<double>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m[i][j] = v[i] * v[j];
    return m;
}

inline double max_diff(const ComplexMatrix& a, const std::vector<std::vector<double>>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - Complex(b[i][j], 0.0)));
    return d;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
    std::normal_distribution<double> dist;
    std::vector<Complex> data(rows * cols);
    for (auto& z : data) z = Complex(dist(gen), dist(gen));
    return ComplexMatrix(rows, cols, std::move(data));
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& gen) {
    const ComplexMatrix a = random_matrix(n, n, gen);
    std::vector<Complex> data(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) data[i * n + j] = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return ComplexMatrix(n, n, std::move(data));
}

/// R = diag(1, ω, ω²), ω = e^{2πi/3}: a Z_3 operator whose eigenbasis is the
/// standard basis, so ρ0 written here is already in the λ-basis.
inline ComplexMatrix z3_clock() {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    return ComplexMatrix::from_rows({{1, 0, 0}, {0, w, 0}, {0, 0, w * w}});
}

/// Diagonally dominant (hence PSD) trace-one ρ0 with ⟨0|ρ0|1⟩ negative:
/// the 0-1-2 cycle has a negative product, so no rephasing makes it
/// entry-wise nonnegative.
inline ComplexMatrix negative_cycle_rho0() {
    return ComplexMatrix::from_rows({{0.4, -0.05, 0.05}, {-0.05, 0.3, 0.05}, {0.05, 0.05, 0.3}});
}

/// PSD ρ0 whose 0-1-2 cycle carries phase i: not realizable as real.
inline ComplexMatrix complex_cycle_rho0() {
    const Complex i(0.0, 1.0);
    return ComplexMatrix::from_rows({{0.4, 0.05, 0.05}, {0.05, 0.3, 0.05 * i}, {0.05, -0.05 * i, 0.3}});
}

}  // namespace symdisc::testing
