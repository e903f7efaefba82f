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

// Minimum-error measurement for equal-prior symmetric ensembles.
//
// For a family whose rho_0 is real and nonnegative in the eigenbasis {|λ⟩}
// of R, the measurement
//     π_k = R^k Φ2 |φ0⟩⟨φ0| Φ2 R^{†k},   Φ2 = Σ_λ N^{-1/2}⟨λ|φ0⟩^{-1} |λ⟩⟨λ|
// is optimal for any |φ0⟩ with real nonzero overlaps. Since Φ2|φ0⟩ is always
// N^{-1/2} Σ_λ |λ⟩, the default (canonical) path builds π_0 directly as the
// matrix with every entry 1/N in the λ-basis.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symdisc/cxmat.hpp"
#include "symdisc/error.hpp"
#include "symdisc/symstates.hpp"

namespace symdisc {

struct Pom {
    std::vector<ComplexMatrix> elements;

    std::size_t size() const noexcept { return elements.size(); }
    const ComplexMatrix& operator[](std::size_t k) const { return elements[k]; }
};

struct Phi2Operator {
    ComplexMatrix matrix;
    std::vector<double> coefficients;
};

/// Pass thresholds for the optimality conditions. `scale` multiplies all of
/// them; any scale other than 1 makes a report non-certifying.
struct Thresholds {
    static constexpr double kPairwise = 1e-8;
    static constexpr double kGlobal = 1e-8;
    static constexpr double kCompleteness = 1e-9;
    static constexpr double kPositivity = 1e-10;
    static constexpr double kHermiticity = 1e-9;
    double scale = 1.0;
};

struct ConditionResiduals {
    /// max_{j,k} ‖π_k(p_kρ_k − p_jρ_j)π_j‖_F
    double pairwise_residual = 0.0;
    /// min_j λ_min(Σ_k p_kπ_kρ_k − p_jρ_j)
    double global_min_eigenvalue = 0.0;
    /// ‖Σ_kπ_kρ_k − (Σ_kπ_kρ_k)†‖_F
    double sum_hermiticity_residual = 0.0;
    /// min_k λ_min(π_k)
    double pom_positivity_min = 0.0;
    /// ‖Σ_kπ_k − I‖_F
    double completeness_residual = 0.0;
};

inline bool passes(const ConditionResiduals& r, const Thresholds& t) {
    return r.pairwise_residual <= Thresholds::kPairwise * t.scale &&
           r.global_min_eigenvalue >= -Thresholds::kGlobal * t.scale &&
           r.completeness_residual <= Thresholds::kCompleteness * t.scale &&
           r.pom_positivity_min >= -Thresholds::kPositivity * t.scale &&
           r.sum_hermiticity_residual <= Thresholds::kHermiticity * t.scale;
}

struct BlockReport {
    std::size_t dim = 0;
    double weight = 0.0;
    /// Σ_k p_k tr(π_kρ_k) restricted to this block.
    double correct_share = 0.0;
    bool phase_graph_connected = true;
    Pom pom;
    ConditionResiduals residuals;
};

struct OptimalityReport {
    double p_error = 0.0;
    ConditionResiduals conditions;
    std::vector<BlockReport> per_block;
    bool optimal = false;
    bool certifying = true;
    double tol_scale = 1.0;
};

// ---------------------------------------------------------------------------
// Condition checks on explicit states and POM elements.

inline void require_compatible(std::span<const ComplexMatrix> states, const Pom& pom) {
    if (states.size() != pom.size() || states.empty()) {
        throw Error(ErrorKind::DimensionMismatch, "POM has " + std::to_string(pom.size()) + " elements for " +
                                                      std::to_string(states.size()) + " states");
    }
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (pom[k].rows() != states[k].rows() || !pom[k].is_square()) {
            throw Error(ErrorKind::DimensionMismatch, "POM element dimension does not match the states");
        }
    }
}

/// 1 − Σ_k p tr(π_kρ_k) for equal priors p = 1/N.
inline double error_probability(std::span<const ComplexMatrix> states, const Pom& pom) {
    require_compatible(states, pom);
    const double p = 1.0 / static_cast<double>(states.size());
    double correct = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) correct += p * trace(pom[k] * states[k]).real();
    return 1.0 - correct;
}

inline double check_pairwise_condition(std::span<const ComplexMatrix> states, const Pom& pom) {
    require_compatible(states, pom);
    const double p = 1.0 / static_cast<double>(states.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        for (std::size_t j = 0; j < states.size(); ++j) {
            if (j == k) continue;  // the operator vanishes identically
            const ComplexMatrix diff = p * (states[k] - states[j]);
            worst = std::max(worst, frobenius_norm(pom[k] * diff * pom[j]));
        }
    }
    return worst;
}

struct GlobalCondition {
    double min_eigenvalue = 0.0;
    double hermiticity_residual = 0.0;
};

/// Evaluates Σ_k p π_kρ_k − p ρ_j for every j on its Hermitian part and
/// records how far Σ_k π_kρ_k is from Hermitian. Never throws on a broken POM.
inline GlobalCondition global_condition_detail(std::span<const ComplexMatrix> states, const Pom& pom) {
    require_compatible(states, pom);
    const std::size_t d = states.front().rows();
    const double p = 1.0 / static_cast<double>(states.size());
    ComplexMatrix sum = ComplexMatrix::zeros(d, d);
    for (std::size_t k = 0; k < states.size(); ++k) sum = sum + pom[k] * states[k];
    GlobalCondition out;
    out.hermiticity_residual = hermiticity_residual(sum);
    const ComplexMatrix lhs = hermitian_part(p * sum);
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < states.size(); ++j) {
        const ComplexMatrix op = hermitian_part(lhs - p * states[j]);
        out.min_eigenvalue = std::min(out.min_eigenvalue, min_eigenvalue(op));
    }
    return out;
}

/// min_j λ_min(Σ_k p π_kρ_k − p ρ_j). Throws when Σ_k π_kρ_k is not
/// Hermitian within 1e-9, which only happens for a broken POM.
inline double check_global_condition(std::span<const ComplexMatrix> states, const Pom& pom) {
    const GlobalCondition g = global_condition_detail(states, pom);
    if (g.hermiticity_residual > Thresholds::kHermiticity) {
        throw Error(ErrorKind::NonHermitian,
                    "Σ_k π_kρ_k is not Hermitian (residual " + std::to_string(g.hermiticity_residual) + ")");
    }
    return g.min_eigenvalue;
}

inline double completeness_residual(const Pom& pom) {
    const std::size_t d = pom[0].rows();
    ComplexMatrix sum = ComplexMatrix::zeros(d, d);
    for (const auto& e : pom.elements) sum = sum + e;
    return frobenius_norm(sum - ComplexMatrix::identity(d));
}

inline double pom_positivity_min(const Pom& pom) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& e : pom.elements) lo = std::min(lo, min_eigenvalue(hermitian_part(e)));
    return lo;
}

inline ConditionResiduals evaluate_conditions(std::span<const ComplexMatrix> states, const Pom& pom) {
    ConditionResiduals r;
    r.pairwise_residual = check_pairwise_condition(states, pom);
    const GlobalCondition g = global_condition_detail(states, pom);
    r.global_min_eigenvalue = g.min_eigenvalue;
    r.sum_hermiticity_residual = g.hermiticity_residual;
    r.pom_positivity_min = pom_positivity_min(pom);
    r.completeness_residual = completeness_residual(pom);
    return r;
}

/// P(k|j) = tr(π_kρ_j), indexed [j][k].
inline std::vector<std::vector<double>> outcome_probabilities(std::span<const ComplexMatrix> states, const Pom& pom) {
    require_compatible(states, pom);
    std::vector<std::vector<double>> out(states.size(), std::vector<double>(pom.size()));
    for (std::size_t j = 0; j < states.size(); ++j)
        for (std::size_t k = 0; k < pom.size(); ++k) out[j][k] = trace(pom[k] * states[j]).real();
    return out;
}

// ---------------------------------------------------------------------------
// Family-level construction.

inline double error_probability(const SymmetricFamily& family, const Pom& pom) {
    const auto states = generate_states(family);
    return error_probability(states, pom);
}

inline double check_pairwise_condition(const SymmetricFamily& family, const Pom& pom) {
    const auto states = generate_states(family);
    return check_pairwise_condition(states, pom);
}

inline double check_global_condition(const SymmetricFamily& family, const Pom& pom) {
    const auto states = generate_states(family);
    return check_global_condition(states, pom);
}

/// ⟨λ|φ0⟩ for each stored eigenvector.
inline std::vector<Complex> overlaps(const SymmetricFamily& family, const ComplexMatrix& phi0) {
    if (phi0.rows() != family.dim() || phi0.cols() != 1) {
        throw Error(ErrorKind::DimensionMismatch, "phi0 must be a column vector of the family dimension");
    }
    const ComplexMatrix o = adjoint(family.eigenbasis()) * phi0;
    std::vector<Complex> out(o.rows());
    for (std::size_t i = 0; i < o.rows(); ++i) out[i] = o(i, 0);
    return out;
}

/// Overlaps of an admissible φ0: unit norm, every ⟨λ|φ0⟩ real and nonzero.
inline std::vector<double> validated_overlaps(const SymmetricFamily& family, const ComplexMatrix& phi0) {
    const double nrm = frobenius_norm(phi0);
    if (std::abs(nrm - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidPhi0, "phi0 must be normalized, has norm " + std::to_string(nrm));
    }
    std::vector<double> out;
    for (const Complex& z : overlaps(family, phi0)) {
        if (std::abs(z) <= 1e-8) throw Error(ErrorKind::InvalidPhi0, "phi0 has a vanishing overlap ⟨λ|φ0⟩");
        if (std::abs(z.imag()) > 1e-9) throw Error(ErrorKind::InvalidPhi0, "phi0 has a complex overlap ⟨λ|φ0⟩");
        out.push_back(z.real());
    }
    return out;
}

/// (1/√d) Σ_λ |λ⟩.
inline ComplexMatrix uniform_phi0(const SymmetricFamily& family) {
    const std::size_t d = family.dim();
    std::vector<Complex> ones(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
    return family.eigenbasis() * ComplexMatrix::column(ones);
}

/// φ0 = Σ_λ x_λ|λ⟩ / ‖x‖ from real coefficients in the eigenbasis.
inline ComplexMatrix phi0_from_coefficients(const SymmetricFamily& family, std::span<const double> coeffs) {
    if (coeffs.size() != family.dim()) {
        throw Error(ErrorKind::InvalidPhi0, "phi0 needs " + std::to_string(family.dim()) + " coefficients");
    }
    double nrm = 0.0;
    for (double x : coeffs) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) throw Error(ErrorKind::InvalidPhi0, "phi0 coefficients are all zero");
    std::vector<Complex> c;
    for (double x : coeffs) c.emplace_back(x / nrm, 0.0);
    return family.eigenbasis() * ComplexMatrix::column(c);
}

/// Φ = Σ_k R^k|φ0⟩⟨φ0|R^{†k}.
inline ComplexMatrix build_phi(const SymmetricFamily& family, const ComplexMatrix& phi0) {
    validated_overlaps(family, phi0);
    const ComplexMatrix gamma0 = phi0 * adjoint(phi0);
    const std::size_t d = family.dim();
    const ComplexMatrix r_dag = adjoint(family.r());
    ComplexMatrix term = gamma0;
    ComplexMatrix phi = ComplexMatrix::zeros(d, d);
    for (int k = 0; k < family.n(); ++k) {
        phi = phi + term;
        term = family.r() * term * r_dag;
    }
    return phi;
}

inline Phi2Operator build_phi2(const SymmetricFamily& family, const ComplexMatrix& phi0) {
    const std::vector<double> ov = validated_overlaps(family, phi0);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(family.n()));
    Phi2Operator out;
    std::vector<Complex> diag;
    for (double x : ov) {
        out.coefficients.push_back(inv_sqrt_n / x);
        diag.emplace_back(out.coefficients.back(), 0.0);
    }
    const ComplexMatrix& v = family.eigenbasis();
    out.matrix = v * ComplexMatrix::diagonal(diag) * adjoint(v);
    return out;
}

namespace detail {

inline Pom orbit(const SymmetricFamily& family, const ComplexMatrix& pi0) {
    Pom pom;
    const ComplexMatrix r_dag = adjoint(family.r());
    pom.elements.push_back(pi0);
    for (int k = 1; k < family.n(); ++k) pom.elements.push_back(family.r() * pom.elements.back() * r_dag);
    return pom;
}

}  // namespace detail

/// Canonical construction: π0 has every entry 1/N in the λ-basis.
inline Pom build_pom(const SymmetricFamily& family) {
    const std::size_t d = family.dim();
    const ComplexMatrix u = family.eigenbasis() * ComplexMatrix::column(std::vector<Complex>(d, Complex(1.0, 0.0)));
    const ComplexMatrix pi0 = (1.0 / family.n()) * (u * adjoint(u));
    return detail::orbit(family, pi0);
}

/// π_k = R^k Φ2 Γ0 Φ2 R^{†k} for an explicit φ0.
inline Pom build_pom(const SymmetricFamily& family, const ComplexMatrix& phi0) {
    const Phi2Operator phi2 = build_phi2(family, phi0);
    const ComplexMatrix gamma0 = phi0 * adjoint(phi0);
    return detail::orbit(family, phi2.matrix * gamma0 * phi2.matrix);
}

inline Pom build_pom(const SymmetricFamily& family, const std::optional<ComplexMatrix>& phi0) {
    return phi0 ? build_pom(family, *phi0) : build_pom(family);
}

/// ‖Φ2 − Φ^{-1/2}‖_F; requires every overlap to be strictly positive.
inline double sqrt_measurement_distance(const SymmetricFamily& family, const ComplexMatrix& phi0) {
    for (double x : validated_overlaps(family, phi0)) {
        if (x <= 0.0) {
            throw Error(ErrorKind::Precondition, "square-root equivalence needs strictly positive overlaps ⟨λ|φ0⟩");
        }
    }
    const ComplexMatrix phi = build_phi(family, phi0);
    return frobenius_norm(build_phi2(family, phi0).matrix - inverse_sqrt(phi));
}

inline bool sqrt_measurement_equivalence(const SymmetricFamily& family, const ComplexMatrix& phi0) {
    return sqrt_measurement_distance(family, phi0) <= 1e-8;
}

// ---------------------------------------------------------------------------
// Problem-level solving.

struct Solution {
    /// One POM per block, in block order.
    std::vector<Pom> block_poms;
    OptimalityReport report;
};

/// Block-diagonal POM ⊕_b π_k^{(b)}.
inline Pom assemble_pom(std::span<const Pom> block_poms) {
    Pom full;
    const std::size_t n = block_poms.front().size();
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<ComplexMatrix> parts;
        for (const auto& p : block_poms) parts.push_back(p[k]);
        full.elements.push_back(direct_sum(parts));
    }
    return full;
}

/// Scores arbitrary per-block POMs against a problem. Residuals are taken on
/// the assembled direct-sum operators; each block also gets its own.
inline OptimalityReport evaluate(const DirectSumProblem& problem, std::span<const Pom> block_poms,
                                 Thresholds thresholds = {}) {
    if (block_poms.size() != problem.blocks().size()) {
        throw Error(ErrorKind::DimensionMismatch, "need exactly one POM per block");
    }
    OptimalityReport report;
    double correct = 0.0;
    for (std::size_t b = 0; b < block_poms.size(); ++b) {
        const SymmetricFamily& fam = problem.blocks()[b];
        const auto states = generate_states(fam);
        BlockReport br;
        br.dim = fam.dim();
        br.weight = fam.weight();
        br.phase_graph_connected = fam.phase_graph_connected();
        br.pom = block_poms[b];
        br.correct_share = 1.0 - error_probability(states, block_poms[b]);
        br.residuals = evaluate_conditions(states, block_poms[b]);
        correct += br.correct_share;
        report.per_block.push_back(std::move(br));
    }
    const auto states = problem.states();
    const Pom full = assemble_pom(block_poms);
    report.conditions = evaluate_conditions(states, full);
    report.p_error = 1.0 - correct;
    report.tol_scale = thresholds.scale;
    report.certifying = thresholds.scale == 1.0;
    report.optimal = passes(report.conditions, thresholds);
    return report;
}

/// Builds the canonical optimal POM for every block and reports on it.
/// A 1-dimensional block gets π_k = [1/N] and contributes weight/N.
inline Solution solve(const DirectSumProblem& problem, Thresholds thresholds = {}) {
    Solution sol;
    for (const auto& block : problem.blocks()) sol.block_poms.push_back(build_pom(block));
    sol.report = evaluate(problem, sol.block_poms, thresholds);
    return sol;
}

inline Solution solve(const SymmetricFamily& family, Thresholds thresholds = {}) {
    return solve(DirectSumProblem::single(family), thresholds);
}

}  // namespace symdisc
