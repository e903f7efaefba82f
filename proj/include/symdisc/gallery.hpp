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

// Reference ensembles:
//   ex1(n)  pure qubit states |Ψ_k⟩ = R(2π/n)^k (1,0)
//   ex2     mixed qubit states from ρ0 = diag(1/3, 2/3), N = 3
//   ex3     two-qubit trine mixtures, split into spin-1 ⊕ spin-0 blocks

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "symdisc/cxmat.hpp"
#include "symdisc/error.hpp"
#include "symdisc/symstates.hpp"

namespace symdisc::gallery {

/// Planar rotation [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]; a spin-1/2
/// rotation about the 2-axis, so R(2π/n)^n = −I.
inline ComplexMatrix qubit_rotation(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return ComplexMatrix::from_rows({{c, -s}, {s, c}});
}

/// Sign of R^n, read off numerically.
inline Sign order_sign(const ComplexMatrix& r, int n) {
    const ComplexMatrix rn = power(r, static_cast<unsigned>(n));
    const ComplexMatrix id = ComplexMatrix::identity(r.rows());
    if (frobenius_norm(rn - id) <= FamilyTolerances::kOrder) return Sign::Plus;
    if (frobenius_norm(rn + id) <= FamilyTolerances::kOrder) return Sign::Minus;
    throw Error(ErrorKind::Order, "R^n is not ±I");
}

inline SymmetricFamily build_ex1(int n) {
    if (n < 2) throw Error(ErrorKind::Precondition, "ex1 needs n >= 2, got " + std::to_string(n));
    const ComplexMatrix r = qubit_rotation(2.0 * std::numbers::pi / n);
    const ComplexMatrix rho0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    return SymmetricFamily::create(r, n, order_sign(r, n), rho0);
}

inline SymmetricFamily build_ex2() {
    const ComplexMatrix r = qubit_rotation(2.0 * std::numbers::pi / 3.0);
    const ComplexMatrix rho0 = ComplexMatrix::from_rows({{1.0 / 3.0, 0.0}, {0.0, 2.0 / 3.0}});
    return SymmetricFamily::create(r, 3, Sign::Minus, rho0);
}

/// ρ̃0 of the spin-1 block, written out explicitly.
inline ComplexMatrix ex3_spin1_rho0() {
    return ComplexMatrix::from_rows({{1.0 / 16, 0.0, -3.0 / 16}, {0.0, 0.0, 0.0}, {-3.0 / 16, 0.0, 9.0 / 16}});
}

/// R₃ of the spin-1 block, written out explicitly (θ = 2π/3).
inline ComplexMatrix ex3_spin1_rotation() {
    const double t = 2.0 * std::numbers::pi / 3.0;
    const double c2 = std::pow(std::cos(t / 2), 2);
    const double s2 = std::pow(std::sin(t / 2), 2);
    const double q = std::sin(t) / std::sqrt(2.0);
    return ComplexMatrix::from_rows({{c2, q, s2}, {-q, std::cos(t), q}, {s2, -q, c2}});
}

/// Trine state |k⟩ = R(2π/3)^k (1, 0).
inline ComplexMatrix trine(int k) {
    const ComplexMatrix r = qubit_rotation(2.0 * std::numbers::pi / 3.0);
    return power(r, static_cast<unsigned>(k)) * ComplexMatrix::from_rows({{1.0}, {0.0}});
}

/// Columns |1,1⟩, |1,0⟩, |1,−1⟩, |0,0⟩ in the product basis |00⟩,|01⟩,|10⟩,|11⟩.
inline ComplexMatrix spin_coupling_basis() {
    const double h = 1.0 / std::sqrt(2.0);
    return ComplexMatrix::from_rows({{1, 0, 0, 0}, {0, h, 0, h}, {0, h, 0, -h}, {0, 0, 1, 0}});
}

/// ρ_k of the two-qubit construction, ½(|a b⟩⟨a b| + |b a⟩⟨b a|) with
/// {a, b} the two trines other than k.
inline ComplexMatrix ex3_two_qubit_state(int k) {
    const ComplexMatrix a = trine((k + 1) % 3);
    const ComplexMatrix b = trine((k + 2) % 3);
    const ComplexMatrix ab = tensor(a, b);
    const ComplexMatrix ba = tensor(b, a);
    return 0.5 * (ab * adjoint(ab) + ba * adjoint(ba));
}

namespace detail {

inline ComplexMatrix sub_block(const ComplexMatrix& m, std::size_t offset, std::size_t size) {
    std::vector<Complex> data;
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) data.push_back(m(offset + i, offset + j));
    return ComplexMatrix(size, size, std::move(data));
}

}  // namespace detail

/// Builds ex3 from the trine states, rotates to the spin basis and checks
/// the result against the explicit block matrices before returning them.
/// Block state ρ_k (generated by R₃) is the two-qubit state with index (3 − k) mod 3.
inline DirectSumProblem build_ex3() {
    constexpr double kAgree = 1e-10;
    const ComplexMatrix w = spin_coupling_basis();
    const ComplexMatrix w_dag = adjoint(w);

    const ComplexMatrix rho_spin = w_dag * ex3_two_qubit_state(0) * w;
    const ComplexMatrix r2 = qubit_rotation(2.0 * std::numbers::pi / 3.0);
    const ComplexMatrix r_spin = w_dag * tensor(r2, r2) * w;

    const ComplexMatrix rho1 = detail::sub_block(rho_spin, 0, 3);
    const ComplexMatrix r1 = detail::sub_block(r_spin, 0, 3);
    const ComplexMatrix rho_singlet = detail::sub_block(rho_spin, 3, 1);
    const ComplexMatrix r_singlet = detail::sub_block(r_spin, 3, 1);

    double leak = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        leak = std::max({leak, std::abs(rho_spin(i, 3)), std::abs(rho_spin(3, i)), std::abs(r_spin(i, 3)),
                         std::abs(r_spin(3, i))});
    }
    if (leak > kAgree) throw Error(ErrorKind::Construction, "ex3: spin-1 and spin-0 sectors are coupled");
    if (max_abs_difference(rho1, ex3_spin1_rho0()) > kAgree) {
        throw Error(ErrorKind::Construction, "ex3: spin-1 block of ρ0 disagrees with the explicit matrix");
    }
    // R⊗R restricted to spin-1 is R₃† = R₃^{-1}: the same Z_3 orbit, traversed
    // with k -> -k. Block state k therefore equals two-qubit state (3 - k) % 3.
    if (max_abs_difference(r1, adjoint(ex3_spin1_rotation())) > kAgree) {
        throw Error(ErrorKind::Construction, "ex3: spin-1 block of R⊗R is not generated by R₃");
    }
    if (std::abs(rho_singlet(0, 0) - 3.0 / 8.0) > kAgree || std::abs(r_singlet(0, 0) - 1.0) > kAgree) {
        throw Error(ErrorKind::Construction, "ex3: singlet block disagrees with (3/8, R = 1)");
    }

    std::vector<SymmetricFamily> blocks;
    blocks.push_back(SymmetricFamily::create(ex3_spin1_rotation(), 3, Sign::Plus, ex3_spin1_rho0(), 5.0 / 8.0));
    blocks.push_back(SymmetricFamily::create(ComplexMatrix::identity(1), 3, Sign::Plus,
                                             ComplexMatrix::from_rows({{3.0 / 8.0}}), 3.0 / 8.0));
    return DirectSumProblem::create(std::move(blocks));
}

}  // namespace symdisc::gallery
