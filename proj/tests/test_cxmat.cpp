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

#include "symdisc/cxmat.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "reference.hpp"

using namespace symdisc;
using symdisc::testing::random_hermitian;
using symdisc::testing::random_matrix;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix spin1_rho0() {
    return ComplexMatrix::from_rows({{1.0 / 16, 0.0, -3.0 / 16}, {0.0, 0.0, 0.0}, {-3.0 / 16, 0.0, 9.0 / 16}});
}

}  // namespace

TEST(ComplexMatrix, RejectsBadShapes) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), Error);
    EXPECT_THROW(ComplexMatrix::zeros(65, 65), Error);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(std::numeric_limits<double>::quiet_NaN(), 0)}), Error);
    try {
        ComplexMatrix::identity(65);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionTooLarge);
    }
}

TEST(Matmul, IdentityAndInvolution) {
    std::mt19937_64 gen(1);
    const ComplexMatrix m = random_matrix(2, 2, gen);
    EXPECT_EQ(matmul(ComplexMatrix::identity(2), m), m);

    const ComplexMatrix x = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    EXPECT_EQ(x * x, ComplexMatrix::identity(2));
}

TEST(Matmul, QubitRotationCubedIsMinusIdentity) {
    const double t = 2.0 * std::numbers::pi / 3.0;
    const ComplexMatrix r =
        ComplexMatrix::from_rows({{std::cos(t / 2), -std::sin(t / 2)}, {std::sin(t / 2), std::cos(t / 2)}});
    EXPECT_LE(max_abs_difference(r * r * r, -1.0 * ComplexMatrix::identity(2)), 1e-15);
}

TEST(Matmul, DimensionMismatch) {
    try {
        matmul(ComplexMatrix::zeros(2, 3), ComplexMatrix::zeros(2, 3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(Adjoint, Examples) {
    const ComplexMatrix sym = ComplexMatrix::from_rows({{1, 2}, {2, 3}});
    EXPECT_EQ(adjoint(sym), sym);
    const ComplexMatrix a = ComplexMatrix::from_rows({{0, I}, {0, 0}});
    EXPECT_EQ(adjoint(a), ComplexMatrix::from_rows({{0, 0}, {-I, 0}}));
}

TEST(Adjoint, InvolutionIsExact) {
    std::mt19937_64 gen(2);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix m = random_matrix(1 + t % 5, 1 + (t * 3) % 7, gen);
        EXPECT_EQ(adjoint(adjoint(m)), m);
    }
}

TEST(Trace, Examples) {
    EXPECT_EQ(trace(ComplexMatrix::identity(3)), Complex(3.0, 0.0));
    EXPECT_NEAR(trace(spin1_rho0()).real(), 5.0 / 8.0, 1e-15);
    EXPECT_THROW(trace(ComplexMatrix::zeros(2, 3)), Error);
}

TEST(Tensor, IdentityAndTrineProduct) {
    EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));

    const double h = std::sqrt(3.0) / 2.0;
    const ComplexMatrix one = ComplexMatrix::from_rows({{0.5}, {h}});
    const ComplexMatrix two = ComplexMatrix::from_rows({{0.5}, {-h}});
    const ComplexMatrix v = tensor(one, two);
    ASSERT_EQ(v.rows(), 4u);
    const double s3 = std::sqrt(3.0);
    const double expected[] = {0.25, -s3 / 4, s3 / 4, -0.75};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(v(i, 0).real(), expected[i], 1e-15);
}

TEST(Tensor, TraceIsMultiplicative) {
    std::mt19937_64 gen(3);
    for (int t = 0; t < 50; ++t) {
        const ComplexMatrix a = random_matrix(1 + t % 4, 1 + t % 4, gen);
        const ComplexMatrix b = random_matrix(1 + (t / 4) % 4, 1 + (t / 4) % 4, gen);
        EXPECT_LE(std::abs(trace(tensor(a, b)) - trace(a) * trace(b)), 1e-12);
    }
}

TEST(DirectSum, Examples) {
    const ComplexMatrix single[] = {ComplexMatrix::identity(2)};
    EXPECT_EQ(direct_sum(single), ComplexMatrix::identity(2));

    const ComplexMatrix m = direct_sum({spin1_rho0(), ComplexMatrix::from_rows({{3.0 / 8.0}})});
    ASSERT_EQ(m.rows(), 4u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), spin1_rho0()(i, j));
    EXPECT_EQ(m(3, 3), Complex(3.0 / 8.0));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(m(i, 3), Complex{});
        EXPECT_EQ(m(3, i), Complex{});
    }
    EXPECT_THROW(direct_sum(std::span<const ComplexMatrix>{}), Error);
}

TEST(DirectSum, TraceAdditiveAndPreservesHermitianPsd) {
    std::mt19937_64 gen(4);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix a = random_hermitian(1 + t % 3, gen);
        const ComplexMatrix b = random_hermitian(1 + t % 4, gen);
        EXPECT_LE(std::abs(trace(direct_sum({a, b})) - trace(a) - trace(b)), 1e-12);
        const ComplexMatrix pa = a * adjoint(a);
        const ComplexMatrix pb = b * adjoint(b);
        const ComplexMatrix s = direct_sum({pa, pb});
        EXPECT_TRUE(is_hermitian(s, 1e-12));
        EXPECT_TRUE(is_psd(s));
    }
}

TEST(HermitianEig, DiagonalExample) {
    const auto r = hermitian_eig(ComplexMatrix::from_rows({{1.0 / 3, 0}, {0, 2.0 / 3}}));
    ASSERT_EQ(r.eigenvalues.size(), 2u);
    EXPECT_NEAR(r.eigenvalues[0], 1.0 / 3, 1e-15);
    EXPECT_NEAR(r.eigenvalues[1], 2.0 / 3, 1e-15);
}

TEST(HermitianEig, AllEntriesOneOverN) {
    for (std::size_t d = 1; d <= 6; ++d) {
        const double n = 7.0;
        const ComplexMatrix m(d, d, std::vector<Complex>(d * d, Complex(1.0 / n)));
        const auto r = hermitian_eig(m);
        for (std::size_t i = 0; i + 1 < d; ++i) EXPECT_NEAR(r.eigenvalues[i], 0.0, 1e-14);
        EXPECT_NEAR(r.eigenvalues.back(), static_cast<double>(d) / n, 1e-14);
    }
    // N = d: the single nonzero eigenvalue is exactly one.
    const ComplexMatrix m(4, 4, std::vector<Complex>(16, Complex(0.25)));
    EXPECT_NEAR(hermitian_eig(m).eigenvalues.back(), 1.0, 1e-14);
}

TEST(HermitianEig, RoundTripOnRandomMatrices) {
    std::mt19937_64 gen(5);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t) % 15;
        const ComplexMatrix a = random_hermitian(n, gen);
        const auto r = hermitian_eig(a);
        const double norm = frobenius_norm(a);
        std::vector<Complex> diag(r.eigenvalues.begin(), r.eigenvalues.end());
        const ComplexMatrix back = r.eigenvectors * ComplexMatrix::diagonal(diag) * adjoint(r.eigenvectors);
        EXPECT_LE(frobenius_norm(back - a), 1e-9 * norm);
        EXPECT_LE(frobenius_norm(adjoint(r.eigenvectors) * r.eigenvectors - ComplexMatrix::identity(n)), 1e-10);
        for (std::size_t i = 0; i < n; ++i) {
            const ComplexMatrix v = r.eigenvectors.col(i);
            EXPECT_LE(frobenius_norm(a * v - r.eigenvalues[i] * v), 1e-10 * norm);
            if (i > 0) {
                EXPECT_LE(r.eigenvalues[i - 1], r.eigenvalues[i]);
            }
        }
    }
}

TEST(HermitianEig, LargestSupportedDimension) {
    std::mt19937_64 gen(6);
    const ComplexMatrix a = random_hermitian(64, gen);
    const auto r = hermitian_eig(a);
    std::vector<Complex> diag(r.eigenvalues.begin(), r.eigenvalues.end());
    const ComplexMatrix back = r.eigenvectors * ComplexMatrix::diagonal(diag) * adjoint(r.eigenvectors);
    EXPECT_LE(frobenius_norm(back - a), 1e-9 * frobenius_norm(a));
}

TEST(HermitianEig, ZeroMatrixAndErrors) {
    const auto r = hermitian_eig(ComplexMatrix::zeros(3, 3));
    for (double x : r.eigenvalues) EXPECT_EQ(x, 0.0);
    try {
        hermitian_eig(ComplexMatrix::from_rows({{0, 1}, {0, 0}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonHermitian);
    }
}

TEST(IsPsd, Examples) {
    EXPECT_TRUE(is_psd(ComplexMatrix::identity(2)));
    EXPECT_FALSE(is_psd(ComplexMatrix::from_rows({{1, 0}, {0, -1}})));
    EXPECT_TRUE(is_psd(ComplexMatrix::zeros(2, 2)));
    // Relative floor: −1e-11 on a unit-scale matrix is dust, −1e-9 is not.
    EXPECT_TRUE(is_psd(ComplexMatrix::from_rows({{1, 0}, {0, -1e-11}})));
    EXPECT_FALSE(is_psd(ComplexMatrix::from_rows({{1, 0}, {0, -1e-9}})));
    // Absolute fallback for tiny matrices.
    EXPECT_TRUE(is_psd(ComplexMatrix::from_rows({{1e-3, 0}, {0, -1e-13}})));
    EXPECT_FALSE(is_psd(ComplexMatrix::from_rows({{1e-3, 0}, {0, -1e-11}})));
}

// Σ_k p π_kρ_k − p ρ_0 for the three-state qubit ensemble, assembled from the
// explicit matrices π0 = (2/3)diag(0,1), ρ0 = diag(1/3, 2/3) and the 2π/3
// rotation, without going through the measurement builder.
TEST(IsPsd, GlobalOperatorOfQubitTrineMixture) {
    using namespace symdisc::testing;
    const Mat2 r = rot2(2.0 * std::numbers::pi / 3.0);
    Mat2 rk = {{{1, 0}, {0, 1}}};
    Mat2 sum{};
    for (int k = 0; k < 3; ++k) {
        const Mat2 pi = mul2(mul2(rk, Mat2{{{0, 0}, {0, 2.0 / 3}}}), transpose2(rk));
        const Mat2 rho = mul2(mul2(rk, Mat2{{{1.0 / 3, 0}, {0, 2.0 / 3}}}), transpose2(rk));
        const Mat2 prod = mul2(pi, rho);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sum[i][j] += prod[i][j] / 3.0;
        rk = mul2(r, rk);
    }
    const ComplexMatrix op = ComplexMatrix::from_rows(
        {{sum[0][0] - 1.0 / 9, sum[0][1]}, {sum[1][0], sum[1][1] - 2.0 / 9}});
    EXPECT_TRUE(is_psd(hermitian_part(op)));
}

TEST(FrobeniusNorm, Examples) {
    EXPECT_EQ(frobenius_norm(ComplexMatrix::zeros(3, 3)), 0.0);
    for (std::size_t d = 1; d <= 5; ++d) EXPECT_NEAR(frobenius_norm(ComplexMatrix::identity(d)), std::sqrt(double(d)), 1e-15);

    const double s2 = std::sqrt(2.0);
    const double k = 1.0 / std::sqrt(6.0);
    const ComplexMatrix phi2 =
        ComplexMatrix::from_rows({{k * (1 + s2), 0, k * (1 - s2)}, {0, k * 2 * s2, 0}, {k * (1 - s2), 0, k * (1 + s2)}});
    // Entry-wise: (2(1+√2)² + 2(1−√2)² + 8)/6 = 10/3.
    double sum_sq = 0.0;
    for (const Complex& z : phi2.entries()) sum_sq += z.real() * z.real();
    EXPECT_NEAR(sum_sq, 10.0 / 3.0, 1e-14);
    EXPECT_NEAR(frobenius_norm(phi2), std::sqrt(10.0 / 3.0), 1e-14);
}

TEST(InverseSqrt, SquaresBackToInverse) {
    std::mt19937_64 gen(7);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix a = random_matrix(4, 4, gen);
        const ComplexMatrix p = a * adjoint(a) + ComplexMatrix::identity(4);
        const ComplexMatrix s = inverse_sqrt(p);
        EXPECT_LE(frobenius_norm(s * s * p - ComplexMatrix::identity(4)), 1e-10);
    }
    EXPECT_THROW(inverse_sqrt(ComplexMatrix::from_rows({{1, 0}, {0, 0}})), Error);
}
