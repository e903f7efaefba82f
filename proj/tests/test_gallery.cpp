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

#include "symdisc/gallery.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "reference.hpp"
#include "symdisc/optmeas.hpp"

using namespace symdisc;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::Io;
}

std::vector<double> trine_vec(int k) {
    const double t = 2.0 * std::numbers::pi * k / 3.0;
    return {std::cos(t / 2), std::sin(t / 2)};
}

}  // namespace

TEST(GalleryEx1, SignAndErrors) {
    EXPECT_EQ(gallery::build_ex1(2).sign(), Sign::Minus);
    EXPECT_EQ(gallery::build_ex1(5).sign(), Sign::Minus);
    EXPECT_EQ(kind_of([] { gallery::build_ex1(1); }), ErrorKind::Precondition);
    EXPECT_EQ(kind_of([] { gallery::build_ex1(0); }), ErrorKind::Precondition);
}

TEST(GalleryEx1, ErrorProbabilities) {
    for (int n = 2; n <= 7; ++n) {
        const Solution s = solve(gallery::build_ex1(n));
        EXPECT_NEAR(s.report.p_error, 1.0 - 2.0 / n, 1e-12) << n;
        EXPECT_TRUE(s.report.optimal) << n;
    }
}

TEST(GalleryEx2, EigenbasisMatchesCircularPolarizations) {
    const SymmetricFamily f = gallery::build_ex2();
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    const ComplexMatrix plus = ComplexMatrix::from_rows({{-i * s}, {s}});
    const ComplexMatrix minus = ComplexMatrix::from_rows({{i * s}, {s}});
    // Eigenvalue e^{iπ/3} pairs with (i, 1)/√2.
    EXPECT_NEAR(std::abs((adjoint(minus) * f.eigenbasis().col(0))(0, 0)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs((adjoint(plus) * f.eigenbasis().col(1))(0, 0)), 1.0, 1e-12);
}

TEST(GalleryEx2, Values) {
    const Solution s = solve(gallery::build_ex2());
    EXPECT_NEAR(s.report.p_error, 5.0 / 9.0, 1e-12);
    EXPECT_TRUE(s.report.optimal);
}

TEST(GalleryEx3, TwoQubitStatesAgreeWithReference) {
    using symdisc::testing::kron;
    for (int k = 0; k < 3; ++k) {
        const auto a = trine_vec((k + 1) % 3);
        const auto b = trine_vec((k + 2) % 3);
        const auto ab = symdisc::testing::outer(kron(a, b));
        const auto ba = symdisc::testing::outer(kron(b, a));
        std::vector<std::vector<double>> rho(4, std::vector<double>(4));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) rho[r][c] = 0.5 * (ab[r][c] + ba[r][c]);
        EXPECT_LE(symdisc::testing::max_diff(gallery::ex3_two_qubit_state(k), rho), 1e-15) << k;
    }
}

TEST(GalleryEx3, BlockStructure) {
    const DirectSumProblem p = gallery::build_ex3();
    ASSERT_EQ(p.blocks().size(), 2u);
    EXPECT_EQ(p.n(), 3);
    EXPECT_EQ(p.dim(), 4u);
    EXPECT_NEAR(p.blocks()[0].weight(), 5.0 / 8.0, 1e-15);
    EXPECT_NEAR(p.blocks()[1].weight(), 3.0 / 8.0, 1e-15);
    EXPECT_EQ(p.blocks()[0].r(), gallery::ex3_spin1_rotation());
}

TEST(GalleryEx3, BlockOrbitIsTwoQubitOrbit) {
    const DirectSumProblem p = gallery::build_ex3();
    const ComplexMatrix w = gallery::spin_coupling_basis();
    const auto states = p.states();
    for (int k = 0; k < 3; ++k) {
        const ComplexMatrix two_qubit = w * states[static_cast<std::size_t>(k)] * adjoint(w);
        EXPECT_LE(max_abs_difference(two_qubit, gallery::ex3_two_qubit_state((3 - k) % 3)), 1e-12) << k;
    }
}

TEST(GalleryEx3, SolutionValues) {
    const Solution s = solve(gallery::build_ex3());
    EXPECT_NEAR(s.report.p_error, 0.264297739604485, 1e-12);
    EXPECT_NEAR(s.report.per_block[1].correct_share, 1.0 / 8.0, 1e-15);
    EXPECT_TRUE(s.report.optimal);
    // Singlet POM is [1/3] for every outcome.
    for (const auto& e : s.block_poms[1].elements) EXPECT_NEAR(e(0, 0).real(), 1.0 / 3.0, 1e-15);
}

TEST(GalleryEx3, Phi2ForAxisVector) {
    const SymmetricFamily f = gallery::build_ex3().blocks()[0];
    const Phi2Operator p2 = build_phi2(f, ComplexMatrix::from_rows({{0}, {0}, {1}}));
    const double s2 = std::sqrt(2.0);
    const double c = 1.0 / std::sqrt(6.0);
    EXPECT_NEAR(p2.matrix(0, 0).real(), c * (1 + s2), 1e-10);
    EXPECT_NEAR(p2.matrix(0, 2).real(), c * (1 - s2), 1e-10);
    EXPECT_NEAR(p2.matrix(1, 1).real(), 2 * s2 * c, 1e-10);
    EXPECT_NEAR(std::abs(p2.matrix(0, 1)), 0.0, 1e-10);

    const Pom pom = build_pom(f, ComplexMatrix::from_rows({{0}, {0}, {1}}));
    const ComplexMatrix pi0 =
        (1.0 / 6.0) * ComplexMatrix::from_rows({{3 - 2 * s2, 0, -1}, {0, 0, 0}, {-1, 0, 3 + 2 * s2}});
    EXPECT_LE(max_abs_difference(pom[0], pi0), 1e-10);
}

TEST(Gallery, BitStable) {
    EXPECT_EQ(gallery::build_ex2().rho0(), gallery::build_ex2().rho0());
    EXPECT_EQ(gallery::build_ex2().eigenbasis(), gallery::build_ex2().eigenbasis());
    const auto a = solve(gallery::build_ex3()).report.p_error;
    const auto b = solve(gallery::build_ex3()).report.p_error;
    EXPECT_EQ(a, b);
}
