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

// Independent checks on the closed-form measurement: exhaustive search over
// the symmetric ansatz π_k = R^kπ0R^{†k}, the qubit Bloch-vector search for
// N = 3, and Monte Carlo sampling of measurement outcomes.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symdisc/cxmat.hpp"
#include "symdisc/error.hpp"
#include "symdisc/gallery.hpp"
#include "symdisc/optmeas.hpp"
#include "symdisc/rng.hpp"
#include "symdisc/symstates.hpp"

namespace symdisc {

inline constexpr int kDefaultGridSteps = 201;
/// Largest per-parameter grid used for 3-dimensional blocks (six real
/// parameters), keeping the search near 1e7 evaluations.
inline constexpr int kMaxGridSteps3d = 15;
/// Allowed amount by which the closed form may exceed the oracle optimum.
inline constexpr double kOracleTolerance = 2e-3;

struct AnsatzSearchResult {
    ComplexMatrix best_pi0;
    double best_p_error = 1.0;
    int grid_steps = 0;
    std::int64_t evaluations = 0;
};

/// Grid search over π0 with diagonal 1/N in the λ-basis (forced by
/// completeness of the orbit) and free off-diagonals r·e^{iθ},
/// r ∈ [0, 1/N], θ ∈ [0, 2π). Infeasible (non-PSD) candidates are skipped.
/// Ties keep the lexicographically smallest grid index.
inline AnsatzSearchResult ansatz_search(const SymmetricFamily& family, int grid_steps = kDefaultGridSteps) {
    const std::size_t d = family.dim();
    if (d > 3) throw Error(ErrorKind::DimensionTooLarge, "ansatz_search supports dimension <= 3");
    if (grid_steps < 11) throw Error(ErrorKind::Precondition, "ansatz_search needs grid_steps >= 11");

    const double a = 1.0 / family.n();
    const ComplexMatrix& rho = family.rho0_in_eigenbasis();
    const ComplexMatrix& v = family.eigenbasis();
    AnsatzSearchResult result;

    auto to_standard = [&](const std::vector<Complex>& lambda_entries) {
        return v * ComplexMatrix(d, d, lambda_entries) * adjoint(v);
    };

    if (d == 1) {
        result.grid_steps = grid_steps;
        result.evaluations = 1;
        result.best_pi0 = ComplexMatrix::from_rows({{a}});
        result.best_p_error = 1.0 - a * rho(0, 0).real();
        return result;
    }

    const int steps = d == 2 ? grid_steps : std::min(grid_steps, kMaxGridSteps3d);
    result.grid_steps = steps;
    std::vector<Complex> grid;  // r index major, θ index minor
    grid.reserve(static_cast<std::size_t>(steps) * static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double r = a * static_cast<double>(i) / static_cast<double>(steps - 1);
        for (int j = 0; j < steps; ++j) grid.push_back(std::polar(r, 2.0 * std::numbers::pi * j / steps));
    }
    const double diag_term = a * trace(rho).real();

    if (d == 2) {
        const double r01 = rho(1, 0).real();
        double best = -1.0;
        Complex best_x{};
        for (const Complex& x : grid) {
            ++result.evaluations;
            // tr(π0 ρ) = a·tr ρ + 2 Re(x ρ10); every |x| <= a is PSD.
            const double correct = diag_term + 2.0 * (x * r01).real();
            if (correct > best) {
                best = correct;
                best_x = x;
            }
        }
        result.best_p_error = 1.0 - best;
        result.best_pi0 = to_standard({a, best_x, std::conj(best_x), a});
        return result;
    }

    // d == 3: x = π01, y = π02, z = π12.
    const double r01 = rho(1, 0).real();
    const double r02 = rho(2, 0).real();
    const double r12 = rho(2, 1).real();
    constexpr double kMinorTol = 1e-14;
    double best = -1.0;
    Complex bx{}, by{}, bz{};
    for (const Complex& x : grid) {
        for (const Complex& y : grid) {
            for (const Complex& z : grid) {
                ++result.evaluations;
                const double det = a * a * a - a * (std::norm(x) + std::norm(y) + std::norm(z)) +
                                   2.0 * (x * z * std::conj(y)).real();
                if (det < -kMinorTol) continue;
                const double correct = diag_term + 2.0 * ((x * r01).real() + (y * r02).real() + (z * r12).real());
                if (correct > best) {
                    best = correct;
                    bx = x;
                    by = y;
                    bz = z;
                }
            }
        }
    }
    result.best_p_error = 1.0 - best;
    result.best_pi0 = to_standard({a, bx, by, std::conj(bx), a, bz, std::conj(by), std::conj(bz), a});
    return result;
}

struct BlochSearchResult {
    double b0 = 0.0;
    double b1 = 0.0;
    double b3 = 0.0;
    double p_error = 1.0;
    std::int64_t evaluations = 0;
};

/// π0 = b0·1 + b1σ1 + b3σ3 with b0 = 1/3.
inline ComplexMatrix bloch_pi0(double b1, double b3) {
    const double b0 = 1.0 / 3.0;
    return ComplexMatrix::from_rows({{b0 + b3, b1}, {b1, b0 - b3}});
}

inline void require_bloch_family(const SymmetricFamily& family) {
    if (family.dim() != 2 || family.n() != 3) {
        throw Error(ErrorKind::Precondition, "bloch_search needs a qubit family with N = 3");
    }
    const ComplexMatrix expected = gallery::qubit_rotation(2.0 * std::numbers::pi / 3.0);
    if (frobenius_norm(family.r() - expected) > 1e-9) {
        throw Error(ErrorKind::Precondition, "bloch_search needs R = rotation by 2π/3 about the 2-axis");
    }
}

/// 1 − (1/3)Σ_k tr(π_kρ_k) for π_k = R^k π0(b1, b3) R^{†k}.
inline double bloch_error_probability(const SymmetricFamily& family, double b1, double b3) {
    require_bloch_family(family);
    const ComplexMatrix r_dag = adjoint(family.r());
    Pom pom;
    pom.elements.push_back(bloch_pi0(b1, b3));
    for (int k = 1; k < 3; ++k) pom.elements.push_back(family.r() * pom.elements.back() * r_dag);
    return error_probability(family, pom);
}

/// Grid over (b1, b3) ∈ [−1/3, 1/3]², restricted to the disk b1² + b3² <= 1/9
/// where all three elements are PSD.
inline BlochSearchResult bloch_search(const SymmetricFamily& family, int grid_steps = kDefaultGridSteps) {
    require_bloch_family(family);
    if (grid_steps < 3) throw Error(ErrorKind::Precondition, "bloch_search needs grid_steps >= 3");
    const int span = grid_steps - 1;
    auto coord = [span](int i) { return static_cast<double>(2 * i - span) / (3.0 * span); };
    BlochSearchResult best;
    best.b0 = 1.0 / 3.0;
    bool found = false;
    for (int i = 0; i < grid_steps; ++i) {
        for (int j = 0; j < grid_steps; ++j) {
            const double b1 = coord(i);
            const double b3 = coord(j);
            if (b1 * b1 + b3 * b3 > 1.0 / 9.0 + 1e-15) continue;
            ++best.evaluations;
            const double p = bloch_error_probability(family, b1, b3);
            if (!found || p < best.p_error) {
                found = true;
                best.p_error = p;
                best.b1 = b1;
                best.b3 = b3;
            }
        }
    }
    return best;
}

struct SimulationResult {
    std::int64_t shots = 0;
    std::int64_t errors = 0;
    double empirical_error_rate = 0.0;
    double analytic_p_error = 0.0;
    std::uint64_t seed = 0;

    double sigma() const { return std::sqrt(analytic_p_error * (1.0 - analytic_p_error) / static_cast<double>(shots)); }
    bool within_3_sigma() const { return std::abs(empirical_error_rate - analytic_p_error) <= 3.0 * sigma(); }
};

/// Samples (true index j, outcome k) pairs: j uniform, k by inverse CDF on
/// tr(π_kρ_j). Probabilities slightly outside [0, 1] are clamped and the row
/// renormalized when it sums to 1 within 1e-9; otherwise the POM is rejected.
inline SimulationResult simulate(std::span<const ComplexMatrix> states, const Pom& pom, std::int64_t shots,
                                 std::uint64_t seed) {
    if (shots < 1) throw Error(ErrorKind::Precondition, "shots must be >= 1");
    const auto probs = outcome_probabilities(states, pom);
    const std::size_t n = states.size();
    std::vector<std::vector<double>> cdf(n, std::vector<double>(n));
    double correct = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (probs[j][k] < -1e-10) {
                throw Error(ErrorKind::Normalization, "P(" + std::to_string(k) + "|" + std::to_string(j) +
                                                          ") = " + std::to_string(probs[j][k]) + " is negative");
            }
            total += probs[j][k];
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw Error(ErrorKind::Normalization, "outcome probabilities for state " + std::to_string(j) +
                                                      " sum to " + std::to_string(total));
        }
        correct += probs[j][j];
        double clamped_total = 0.0;
        for (std::size_t k = 0; k < n; ++k) clamped_total += std::clamp(probs[j][k], 0.0, 1.0);
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += std::clamp(probs[j][k], 0.0, 1.0) / clamped_total;
            cdf[j][k] = acc;
        }
    }

    Xorshift64Star rng(seed);
    SimulationResult out;
    out.shots = shots;
    out.seed = seed;
    out.analytic_p_error = 1.0 - correct / static_cast<double>(n);
    for (std::int64_t s = 0; s < shots; ++s) {
        const auto j = static_cast<std::size_t>(rng.below(n));
        const double u = rng.uniform();
        std::size_t k = 0;
        while (k + 1 < n && u >= cdf[j][k]) ++k;
        if (k != j) ++out.errors;
    }
    out.empirical_error_rate = static_cast<double>(out.errors) / static_cast<double>(shots);
    return out;
}

inline SimulationResult simulate(const DirectSumProblem& problem, std::span<const Pom> block_poms,
                                 std::int64_t shots, std::uint64_t seed) {
    const auto states = problem.states();
    return simulate(states, assemble_pom(block_poms), shots, seed);
}

inline SimulationResult simulate(const SymmetricFamily& family, const Pom& pom, std::int64_t shots,
                                 std::uint64_t seed) {
    const auto states = generate_states(family);
    return simulate(states, pom, shots, seed);
}

/// Adds `delta` to π0 and restores completeness by S^{-1/2}π_kS^{-1/2},
/// S = Σ_kπ_k. Used to build negative controls.
inline Pom perturb_pom(const Pom& pom, const ComplexMatrix& delta) {
    Pom out = pom;
    out.elements[0] = pom[0] + delta;
    const std::size_t d = pom[0].rows();
    ComplexMatrix sum = ComplexMatrix::zeros(d, d);
    for (const auto& e : out.elements) sum = sum + e;
    const ComplexMatrix s = inverse_sqrt(hermitian_part(sum));
    for (auto& e : out.elements) e = s * e * s;
    return out;
}

struct CertifyResult {
    OptimalityReport report;
    std::vector<AnsatzSearchResult> searches;
    double oracle_p_error = 1.0;
    /// report.p_error − oracle_p_error; at most kOracleTolerance when certified.
    double oracle_gap = 0.0;
    bool oracle_ok = false;
    bool certified = false;
};

/// Solves (or scores `injected` per-block POMs), checks both optimality
/// conditions and compares with the ansatz search on every block.
inline CertifyResult certify(const DirectSumProblem& problem, int grid_steps = kDefaultGridSteps,
                             const std::optional<std::vector<Pom>>& injected = std::nullopt,
                             Thresholds thresholds = {}) {
    for (const auto& b : problem.blocks()) {
        if (b.dim() > 3) throw Error(ErrorKind::Precondition, "certify searches blocks of dimension <= 3 only");
    }
    CertifyResult out;
    if (injected) {
        out.report = evaluate(problem, *injected, thresholds);
    } else {
        out.report = solve(problem, thresholds).report;
    }
    double oracle_correct = 0.0;
    for (const auto& b : problem.blocks()) {
        out.searches.push_back(ansatz_search(b, grid_steps));
        oracle_correct += 1.0 - out.searches.back().best_p_error;
    }
    out.oracle_p_error = 1.0 - oracle_correct;
    out.oracle_gap = out.report.p_error - out.oracle_p_error;
    out.oracle_ok = out.oracle_gap <= kOracleTolerance;
    out.certified = out.report.optimal && out.oracle_ok;
    return out;
}

inline CertifyResult certify(const SymmetricFamily& family, int grid_steps = kDefaultGridSteps) {
    return certify(DirectSumProblem::single(family), grid_steps);
}

}  // namespace symdisc
