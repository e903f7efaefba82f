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

// Z_N-symmetric state ensembles rho_k = R^k rho_0 R^{†k} with R^N = ±I.
//
// The spectrum of R is obtained from character projectors
//     P_m = (1/N) Σ_k b_m^{-k} R^k,   b_m = exp(iπ(2m+s)/N),
// never from a general eigensolver. The eigenvectors are then rephased so
// that rho_0 is real and entry-wise nonnegative in that basis, which is the
// precondition for the optimal-measurement construction in optmeas.hpp.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symdisc/cxmat.hpp"
#include "symdisc/error.hpp"
#include "symdisc/rng.hpp"

namespace symdisc {

enum class Sign : int { Plus = 1, Minus = -1 };

inline double to_double(Sign s) { return static_cast<double>(static_cast<int>(s)); }

/// Tolerances for family validation.
struct FamilyTolerances {
    static constexpr double kUnitarity = 1e-9;
    static constexpr double kOrder = 1e-9;
    static constexpr double kHermitian = 1e-9;
    static constexpr double kTrace = 1e-9;
    static constexpr double kEigenpair = 1e-9;
    static constexpr double kProjectorNorm = 1e-8;
    static constexpr double kProjectorTrace = 1e-8;
    static constexpr double kEdge = 1e-10;
    static constexpr double kImag = 1e-9;
    static constexpr double kNegative = 1e-10;
};

struct SpectralComponent {
    Complex eigenvalue;
    ComplexMatrix projector;
};

/// exp(iπ·k/n) with k reduced modulo 2n first.
inline Complex root_phase(long long k, long long n) {
    const long long two_n = 2 * n;
    long long r = k % two_n;
    if (r < 0) r += two_n;
    const double angle = std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    return std::polar(1.0, angle);
}

/// Candidate eigenvalue b_m = exp(iπ(2m+s)/n), s = 0 for R^n = I, 1 for R^n = −I.
inline Complex candidate_eigenvalue(int m, int n, Sign sign) {
    const int s = sign == Sign::Plus ? 0 : 1;
    return root_phase(2LL * m + s, n);
}

inline void check_unitary_order(const ComplexMatrix& r, int n, Sign sign) {
    if (!r.is_square()) throw Error(ErrorKind::DimensionMismatch, "symmetry operator must be square");
    if (n < 1) throw Error(ErrorKind::Order, "group order n must be positive, got " + std::to_string(n));
    const std::size_t d = r.rows();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    const double unitarity = frobenius_norm(r * adjoint(r) - id);
    if (unitarity > FamilyTolerances::kUnitarity) {
        throw Error(ErrorKind::Unitarity, "‖R·R† − I‖_F = " + std::to_string(unitarity) + " exceeds 1e-9");
    }
    const double order = frobenius_norm(power(r, static_cast<unsigned>(n)) - to_double(sign) * id);
    if (order > FamilyTolerances::kOrder) {
        throw Error(ErrorKind::Order, "‖R^" + std::to_string(n) + " − (" + std::to_string(static_cast<int>(sign)) +
                                          ")·I‖_F = " + std::to_string(order) + " exceeds 1e-9");
    }
}

/// Spectral decomposition of a Z_n symmetry operator by character sums.
/// Only components with nonvanishing projectors are returned, in order of m.
/// Any projector of rank other than one means R is degenerate and is rejected.
inline std::vector<SpectralComponent> spectral_projectors(const ComplexMatrix& r, int n, Sign sign) {
    check_unitary_order(r, n, sign);
    const std::size_t d = r.rows();
    std::vector<ComplexMatrix> powers;
    powers.reserve(static_cast<std::size_t>(n));
    powers.push_back(ComplexMatrix::identity(d));
    for (int k = 1; k < n; ++k) powers.push_back(powers.back() * r);

    const int s = sign == Sign::Plus ? 0 : 1;
    std::vector<SpectralComponent> out;
    ComplexMatrix total = ComplexMatrix::zeros(d, d);
    for (int m = 0; m < n; ++m) {
        ComplexMatrix p = ComplexMatrix::zeros(d, d);
        for (int k = 0; k < n; ++k) {
            // b_m^{-k} = exp(-iπ(2m+s)k/n)
            p = p + root_phase(-static_cast<long long>(2 * m + s) * k, n) * powers[static_cast<std::size_t>(k)];
        }
        p = (1.0 / n) * p;
        if (frobenius_norm(p) <= FamilyTolerances::kProjectorNorm) continue;
        const double tr = trace(p).real();
        if (std::abs(tr - 1.0) > FamilyTolerances::kProjectorTrace) {
            throw Error(ErrorKind::Degenerate, "eigenvalue exp(iπ·" + std::to_string(2 * m + s) + "/" +
                                                   std::to_string(n) + ") has multiplicity " + std::to_string(tr) +
                                                   "; R must be nondegenerate");
        }
        total = total + p;
        out.push_back({candidate_eigenvalue(m, n, sign), std::move(p)});
    }
    const double completeness = frobenius_norm(total - ComplexMatrix::identity(d));
    if (completeness > FamilyTolerances::kUnitarity) {
        throw Error(ErrorKind::Construction, "spectral projectors do not sum to identity (residual " +
                                                 std::to_string(completeness) + ")");
    }
    return out;
}

struct PhasedBasis {
    /// Columns are the unit eigenvectors |λ⟩ in projector order.
    ComplexMatrix eigenbasis;
    /// False when the graph of nonzero ⟨λ|ρ0|λ′⟩ entries has several components.
    bool connected = true;
};

/// Picks one eigenvector per rank-1 projector and rephases them so that
/// ⟨λ|ρ0|λ′⟩ is real and nonnegative for every pair.
///
/// Phases propagate breadth-first over the graph whose edges are the entries
/// with |⟨λ|ρ0|λ′⟩| > 1e-10, anchored with phase 0 at the lowest index of
/// each component. The result is verified entry by entry afterwards.
inline PhasedBasis fix_phases(std::span<const SpectralComponent> projectors, const ComplexMatrix& rho0) {
    if (projectors.empty()) throw Error(ErrorKind::DimensionMismatch, "fix_phases: no projectors");
    const std::size_t d = projectors.front().projector.rows();
    if (projectors.size() != d || rho0.rows() != d || !rho0.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "fix_phases: need one projector per dimension of rho0");
    }

    std::vector<ComplexMatrix> vecs;
    vecs.reserve(d);
    for (const auto& comp : projectors) {
        if (std::abs(trace(comp.projector).real() - 1.0) > FamilyTolerances::kProjectorTrace) {
            throw Error(ErrorKind::Degenerate, "fix_phases: projector is not rank one");
        }
        std::size_t best = 0;
        double best_norm = -1.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double nrm = frobenius_norm(comp.projector.col(j));
            if (nrm > best_norm) {
                best_norm = nrm;
                best = j;
            }
        }
        vecs.push_back((1.0 / best_norm) * comp.projector.col(best));
    }

    auto assemble = [d](const std::vector<ComplexMatrix>& cols) {
        std::vector<Complex> data(d * d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) data[i * d + j] = cols[j](i, 0);
        return ComplexMatrix(d, d, std::move(data));
    };

    const ComplexMatrix raw_basis = assemble(vecs);
    const ComplexMatrix m = adjoint(raw_basis) * rho0 * raw_basis;

    std::vector<Complex> phase(d, Complex(1.0, 0.0));
    std::vector<bool> visited(d, false);
    int components = 0;
    for (std::size_t start = 0; start < d; ++start) {
        if (visited[start]) continue;
        ++components;
        visited[start] = true;
        std::deque<std::size_t> queue{start};
        while (!queue.empty()) {
            const std::size_t i = queue.front();
            queue.pop_front();
            for (std::size_t j = 0; j < d; ++j) {
                if (visited[j] || std::abs(m(i, j)) <= FamilyTolerances::kEdge) continue;
                // conj(w_i)·w_j·M_ij must be real positive.
                const Complex unit = m(i, j) / std::abs(m(i, j));
                phase[j] = phase[i] * std::conj(unit);
                visited[j] = true;
                queue.push_back(j);
            }
        }
    }

    for (std::size_t j = 0; j < d; ++j) vecs[j] = phase[j] * vecs[j];
    PhasedBasis result{assemble(vecs), components == 1};

    const ComplexMatrix rephased = adjoint(result.eigenbasis) * rho0 * result.eigenbasis;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (std::abs(rephased(i, j).imag()) > FamilyTolerances::kImag) {
                throw Error(ErrorKind::PhaseInconsistency,
                            "⟨λ" + std::to_string(i) + "|ρ0|λ" + std::to_string(j) +
                                "⟩ cannot be made real; no real-nonnegative eigenbasis exists");
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (rephased(i, j).real() < -FamilyTolerances::kNegative) {
                throw Error(ErrorKind::NegativeEntry, "⟨λ" + std::to_string(i) + "|ρ0|λ" + std::to_string(j) +
                                                          "⟩ = " + std::to_string(rephased(i, j).real()) +
                                                          " is negative in every admissible eigenbasis phase");
            }
        }
    }
    return result;
}

struct SymmetryOperator {
    ComplexMatrix matrix;
    int n = 1;
    Sign sign = Sign::Plus;
    std::vector<Complex> eigenvalues;
    ComplexMatrix eigenbasis;
};

/// An equal-prior Z_N ensemble, validated on construction. `weight` is the
/// trace of rho0: 1 for a standalone problem, the block share inside a
/// DirectSumProblem.
class SymmetricFamily {
public:
    static SymmetricFamily create(const ComplexMatrix& r, int n, Sign sign, const ComplexMatrix& rho0,
                                  double weight = 1.0) {
        if (!rho0.is_square() || rho0.rows() != r.rows()) {
            throw Error(ErrorKind::DimensionMismatch, "rho0 and R must be square with equal dimension");
        }
        const std::vector<SpectralComponent> spectrum = spectral_projectors(r, n, sign);
        const std::size_t d = r.rows();
        if (d > static_cast<std::size_t>(n)) {
            throw Error(ErrorKind::Degenerate, "dimension " + std::to_string(d) + " exceeds group order " +
                                                   std::to_string(n));
        }
        if (spectrum.size() != d) {
            throw Error(ErrorKind::Degenerate, "R has fewer distinct eigenvalues than its dimension");
        }
        if (!is_hermitian(rho0, FamilyTolerances::kHermitian)) {
            throw Error(ErrorKind::NonHermitian, "rho0 is not Hermitian");
        }
        if (!is_psd(rho0)) {
            throw Error(ErrorKind::NotPositive, "rho0 has a negative eigenvalue " + std::to_string(min_eigenvalue(rho0)));
        }
        const double tr = trace(rho0).real();
        if (std::abs(tr - weight) > FamilyTolerances::kTrace) {
            throw Error(ErrorKind::Trace, "trace(rho0) = " + std::to_string(tr) + " but expected " +
                                              std::to_string(weight));
        }

        PhasedBasis basis = fix_phases(spectrum, rho0);

        SymmetricFamily f;
        f.sym_.matrix = r;
        f.sym_.n = n;
        f.sym_.sign = sign;
        for (const auto& c : spectrum) f.sym_.eigenvalues.push_back(c.eigenvalue);
        f.sym_.eigenbasis = basis.eigenbasis;
        f.connected_ = basis.connected;
        for (std::size_t j = 0; j < d; ++j) {
            const ComplexMatrix v = basis.eigenbasis.col(j);
            const double res = frobenius_norm(r * v - f.sym_.eigenvalues[j] * v);
            if (res > FamilyTolerances::kEigenpair) {
                throw Error(ErrorKind::Construction, "eigenpair residual " + std::to_string(res) + " exceeds 1e-9");
            }
        }

        // Stored with dust below the nonnegativity floor clamped to zero.
        const ComplexMatrix raw = adjoint(basis.eigenbasis) * rho0 * basis.eigenbasis;
        std::vector<Complex> clean(d * d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const double re = raw(i, j).real();
                clean[i * d + j] = re < 0.0 ? 0.0 : re;
            }
        }
        f.rho0_lambda_ = ComplexMatrix(d, d, std::move(clean));
        f.rho0_ = rho0;
        f.weight_ = weight;
        return f;
    }

    const SymmetryOperator& sym() const noexcept { return sym_; }
    const ComplexMatrix& r() const noexcept { return sym_.matrix; }
    const ComplexMatrix& rho0() const noexcept { return rho0_; }
    const ComplexMatrix& eigenbasis() const noexcept { return sym_.eigenbasis; }
    /// ⟨λ|ρ0|λ′⟩ in the phase-fixed eigenbasis; real and nonnegative.
    const ComplexMatrix& rho0_in_eigenbasis() const noexcept { return rho0_lambda_; }
    int n() const noexcept { return sym_.n; }
    Sign sign() const noexcept { return sym_.sign; }
    std::size_t dim() const noexcept { return rho0_.rows(); }
    double prior() const noexcept { return 1.0 / sym_.n; }
    double weight() const noexcept { return weight_; }
    bool phase_graph_connected() const noexcept { return connected_; }

private:
    SymmetricFamily() = default;

    SymmetryOperator sym_;
    ComplexMatrix rho0_;
    ComplexMatrix rho0_lambda_;
    double weight_ = 1.0;
    bool connected_ = true;
};

/// [ρ0, Rρ0R†, …, R^{N−1}ρ0R^{†(N−1)}].
inline std::vector<ComplexMatrix> generate_states(const SymmetricFamily& family) {
    std::vector<ComplexMatrix> states;
    states.reserve(static_cast<std::size_t>(family.n()));
    states.push_back(family.rho0());
    const ComplexMatrix r_dag = adjoint(family.r());
    for (int k = 1; k < family.n(); ++k) states.push_back(family.r() * states.back() * r_dag);
    return states;
}

/// A reducible ensemble given as a direct sum of irreducible blocks. All
/// blocks share the group order, and their rho0 traces sum to one.
class DirectSumProblem {
public:
    static DirectSumProblem create(std::vector<SymmetricFamily> blocks) {
        if (blocks.empty()) throw Error(ErrorKind::DimensionMismatch, "problem has no blocks");
        double total = 0.0;
        std::size_t dim = 0;
        for (const auto& b : blocks) {
            if (b.n() != blocks.front().n()) {
                throw Error(ErrorKind::Order, "all blocks must share the same group order n");
            }
            total += b.weight();
            dim += b.dim();
        }
        if (std::abs(total - 1.0) > FamilyTolerances::kTrace) {
            throw Error(ErrorKind::Trace, "block traces sum to " + std::to_string(total) + ", expected 1");
        }
        if (dim > kMaxDimension) throw Error(ErrorKind::DimensionTooLarge, "total dimension exceeds 64");
        DirectSumProblem p;
        p.blocks_ = std::move(blocks);
        return p;
    }

    static DirectSumProblem single(SymmetricFamily family) {
        return create(std::vector<SymmetricFamily>{std::move(family)});
    }

    const std::vector<SymmetricFamily>& blocks() const noexcept { return blocks_; }
    int n() const noexcept { return blocks_.front().n(); }

    std::vector<double> block_traces() const {
        std::vector<double> out;
        for (const auto& b : blocks_) out.push_back(b.weight());
        return out;
    }

    std::size_t dim() const {
        std::size_t d = 0;
        for (const auto& b : blocks_) d += b.dim();
        return d;
    }

    /// Full signal states ρ_k = ⊕_b ρ_k^{(b)}.
    std::vector<ComplexMatrix> states() const {
        std::vector<std::vector<ComplexMatrix>> per_block;
        for (const auto& b : blocks_) per_block.push_back(generate_states(b));
        std::vector<ComplexMatrix> out;
        for (int k = 0; k < n(); ++k) {
            std::vector<ComplexMatrix> parts;
            for (const auto& s : per_block) parts.push_back(s[static_cast<std::size_t>(k)]);
            out.push_back(direct_sum(parts));
        }
        return out;
    }

private:
    DirectSumProblem() = default;
    std::vector<SymmetricFamily> blocks_;
};

namespace detail {

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// diagonal of R made positive.
inline ComplexMatrix haar_unitary(std::size_t d, Xorshift64Star& rng) {
    std::vector<std::vector<Complex>> cols(d, std::vector<Complex>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) cols[j][i] = Complex(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot{};
            for (std::size_t i = 0; i < d; ++i) dot += std::conj(cols[k][i]) * cols[j][i];
            for (std::size_t i = 0; i < d; ++i) cols[j][i] -= dot * cols[k][i];
        }
        double nrm = 0.0;
        for (const Complex& z : cols[j]) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        for (Complex& z : cols[j]) z /= nrm;
    }
    std::vector<Complex> data(d * d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) data[i * d + j] = cols[j][i];
    return ComplexMatrix(d, d, std::move(data));
}

}  // namespace detail

/// Deterministic random valid family for tests and demos.
///
/// Picks `dim` distinct n-th roots of `sign`, builds R = diag(roots) and
/// ρ0 = A·Aᵀ/tr with A uniform on [0,1] in a scratch basis, then conjugates
/// both by a random unitary so callers must recover the eigenbasis.
inline SymmetricFamily random_family(int dim, int n, Sign sign, std::uint64_t seed) {
    if (dim < 1 || dim > n) {
        throw Error(ErrorKind::Precondition, "random_family requires 1 <= dim <= n");
    }
    Xorshift64Star rng(seed);
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < dim; ++i) {
        const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
        std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
    }
    const auto d = static_cast<std::size_t>(dim);
    std::vector<Complex> roots;
    for (std::size_t i = 0; i < d; ++i) roots.push_back(candidate_eigenvalue(idx[i], n, sign));

    std::vector<double> a(d * d);
    for (double& x : a) x = rng.uniform();
    std::vector<Complex> m(d * d);
    double tr = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += a[i * d + k] * a[j * d + k];
            m[i * d + j] = s;
        }
        tr += m[i * d + i].real();
    }
    for (Complex& z : m) z /= tr;

    const ComplexMatrix u = detail::haar_unitary(d, rng);
    const ComplexMatrix u_dag = adjoint(u);
    const ComplexMatrix r = u * ComplexMatrix::diagonal(roots) * u_dag;
    const ComplexMatrix rho0 = hermitian_part(u * ComplexMatrix(d, d, std::move(m)) * u_dag);
    return SymmetricFamily::create(r, n, sign, rho0);
}

}  // namespace symdisc
