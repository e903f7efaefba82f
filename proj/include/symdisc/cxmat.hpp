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

// Dense complex matrices for desk-scale operator algebra (dimension <= 64).
//
// Matrices are immutable values: every operation returns a fresh matrix.
// Hermitian spectra come from cyclic complex Jacobi rotations, which is
// plenty for the sizes handled here and keeps the kernel dependency free.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symdisc/error.hpp"

namespace symdisc {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDimension = 64;

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) {
            throw Error(ErrorKind::DimensionMismatch, "matrix must have at least one row and column");
        }
        if (rows > kMaxDimension || cols > kMaxDimension) {
            throw Error(ErrorKind::DimensionTooLarge,
                        std::to_string(rows) + "x" + std::to_string(cols) + " exceeds the supported maximum of " +
                            std::to_string(kMaxDimension));
        }
        if (data_.size() != rows * cols) {
            throw Error(ErrorKind::DimensionMismatch, "entry count does not match rows*cols");
        }
        for (const Complex& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
            }
        }
    }

    /// Row-major nested initializer, e.g. `ComplexMatrix::from_rows({{1, 0}, {0, 1}})`.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        std::vector<Complex> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) {
                throw Error(ErrorKind::DimensionMismatch, "ragged row in matrix literal");
            }
            data.insert(data.end(), row.begin(), row.end());
        }
        return ComplexMatrix(r, c, std::move(data));
    }

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols));
    }

    static ComplexMatrix identity(std::size_t n) {
        std::vector<Complex> data(n * n);
        for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
        return ComplexMatrix(n, n, std::move(data));
    }

    static ComplexMatrix diagonal(std::span<const Complex> diag) {
        const std::size_t n = diag.size();
        std::vector<Complex> data(n * n);
        for (std::size_t i = 0; i < n; ++i) data[i * n + i] = diag[i];
        return ComplexMatrix(n, n, std::move(data));
    }

    static ComplexMatrix column(std::span<const Complex> entries) {
        return ComplexMatrix(entries.size(), 1, std::vector<Complex>(entries.begin(), entries.end()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const Complex> entries() const noexcept { return data_; }

    /// Column `j` as a d x 1 matrix.
    ComplexMatrix col(std::size_t j) const {
        std::vector<Complex> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return ComplexMatrix(rows_, 1, std::move(out));
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Result of a Hermitian eigendecomposition; eigenvalues ascend and
/// column i of `eigenvectors` belongs to `eigenvalues[i]`.
struct HermitianEigenResult {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

namespace detail {

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": shapes differ");
    }
}

inline void require_square(const ComplexMatrix& a, const char* op) {
    if (!a.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": matrix is not square");
    }
}

}  // namespace detail

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_shape(a, b, "add");
    std::vector<Complex> out(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.entries()[i];
    return ComplexMatrix(a.rows(), a.cols(), std::move(out));
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_shape(a, b, "subtract");
    std::vector<Complex> out(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.entries()[i];
    return ComplexMatrix(a.rows(), a.cols(), std::move(out));
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    std::vector<Complex> out(a.entries().begin(), a.entries().end());
    for (Complex& z : out) z *= s;
    return ComplexMatrix(a.rows(), a.cols(), std::move(out));
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "matmul: " + std::to_string(a.rows()) + "x" +
                                                      std::to_string(a.cols()) + " times " +
                                                      std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    std::vector<Complex> out(a.rows() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out[i * b.cols() + j] += aik * b(k, j);
        }
    }
    return ComplexMatrix(a.rows(), b.cols(), std::move(out));
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    std::vector<Complex> out(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[j * a.rows() + i] = std::conj(a(i, j));
    return ComplexMatrix(a.cols(), a.rows(), std::move(out));
}

inline Complex trace(const ComplexMatrix& a) {
    detail::require_square(a, "trace");
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

/// Kronecker product.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > kMaxDimension || cols > kMaxDimension) {
        throw Error(ErrorKind::DimensionTooLarge, "tensor: result exceeds the supported maximum");
    }
    std::vector<Complex> out(rows * cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out[(i * b.rows() + k) * cols + (j * b.cols() + l)] = a(i, j) * b(k, l);
    return ComplexMatrix(rows, cols, std::move(out));
}

/// Block-diagonal assembly of square blocks.
inline ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
    if (blocks.empty()) throw Error(ErrorKind::DimensionMismatch, "direct_sum: no blocks");
    std::size_t n = 0;
    for (const auto& b : blocks) {
        detail::require_square(b, "direct_sum");
        n += b.rows();
    }
    if (n > kMaxDimension) throw Error(ErrorKind::DimensionTooLarge, "direct_sum: result exceeds the supported maximum");
    std::vector<Complex> out(n * n);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out[(offset + i) * n + offset + j] = b(i, j);
        offset += b.rows();
    }
    return ComplexMatrix(n, n, std::move(out));
}

inline ComplexMatrix direct_sum(std::initializer_list<ComplexMatrix> blocks) {
    return direct_sum(std::span<const ComplexMatrix>(blocks.begin(), blocks.size()));
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

/// Integer power of a square matrix by repeated squaring; k = 0 gives I.
inline ComplexMatrix power(const ComplexMatrix& a, unsigned k) {
    detail::require_square(a, "power");
    ComplexMatrix result = ComplexMatrix::identity(a.rows());
    ComplexMatrix base = a;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

/// ‖A − A†‖_F.
inline double hermiticity_residual(const ComplexMatrix& a) {
    detail::require_square(a, "hermiticity_residual");
    return frobenius_norm(a - adjoint(a));
}

/// (A + A†) / 2.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + adjoint(a)); }

/// Relative hermiticity test ‖A − A†‖_F ≤ tol·‖A‖_F. The 1e-14 absolute
/// slack keeps exact-zero and rounding-dust matrices from being rejected.
inline bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (!a.is_square()) return false;
    return hermiticity_residual(a) <= tol * frobenius_norm(a) + 1e-14;
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation that zeroes it.
/// Iteration stops once every off-diagonal magnitude is at most
/// 1e-13·‖A‖_F; 100 sweeps without reaching that is reported as an error.
inline HermitianEigenResult hermitian_eig(const ComplexMatrix& a, double tol = 1e-9) {
    detail::require_square(a, "hermitian_eig");
    if (!is_hermitian(a, tol)) {
        throw Error(ErrorKind::NonHermitian,
                    "hermitian_eig: ‖A − A†‖_F = " + std::to_string(hermiticity_residual(a)) + " exceeds tolerance");
    }
    const std::size_t n = a.rows();
    const ComplexMatrix h = hermitian_part(a);
    std::vector<Complex> m(h.entries().begin(), h.entries().end());
    std::vector<Complex> v(n * n);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto at = [n](std::vector<Complex>& x, std::size_t i, std::size_t j) -> Complex& { return x[i * n + j]; };

    const double threshold = 1e-13 * frobenius_norm(a);
    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(m, p, q)));
        if (off <= threshold) {
            converged = true;
            break;
        }
        if (sweep == kMaxSweeps) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = at(m, p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase = std::conj(apq) / mag;  // e^{-i arg a_pq}
                const double app = at(m, p, p).real();
                const double aqq = at(m, q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // J = diag(1, phase) · [[c, s], [-s, c]] restricted to (p, q).
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * phase;
                const Complex jqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {  // M <- M J
                    const Complex mkp = at(m, k, p);
                    const Complex mkq = at(m, k, q);
                    at(m, k, p) = mkp * jpp + mkq * jqp;
                    at(m, k, q) = mkp * jpq + mkq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // M <- J† M
                    const Complex mpk = at(m, p, k);
                    const Complex mqk = at(m, q, k);
                    at(m, p, k) = std::conj(jpp) * mpk + std::conj(jqp) * mqk;
                    at(m, q, k) = std::conj(jpq) * mpk + std::conj(jqq) * mqk;
                }
                at(m, p, q) = 0.0;
                at(m, q, p) = 0.0;
                at(m, p, p) = at(m, p, p).real();
                at(m, q, q) = at(m, q, q).real();
                for (std::size_t k = 0; k < n; ++k) {  // V <- V J
                    const Complex vkp = at(v, k, p);
                    const Complex vkq = at(v, k, q);
                    at(v, k, p) = vkp * jpp + vkq * jqp;
                    at(v, k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence, "hermitian_eig: off-diagonal mass remains after 100 sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return at(m, i, i).real() < at(m, j, j).real(); });
    HermitianEigenResult result;
    result.eigenvalues.reserve(n);
    std::vector<Complex> vecs(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        result.eigenvalues.push_back(at(m, order[c], order[c]).real());
        for (std::size_t r = 0; r < n; ++r) vecs[r * n + c] = at(v, r, order[c]);
    }
    result.eigenvectors = ComplexMatrix(n, n, std::move(vecs));
    return result;
}

inline double min_eigenvalue(const ComplexMatrix& a, double tol = 1e-9) { return hermitian_eig(a, tol).eigenvalues.front(); }

/// Default PSD floor: 1e-10·‖A‖_F, or 1e-12 absolute when ‖A‖_F < 1e-2.
inline double default_psd_floor(const ComplexMatrix& a) {
    const double norm = frobenius_norm(a);
    return norm < 1e-2 ? 1e-12 : 1e-10 * norm;
}

/// True iff the smallest eigenvalue is at least −floor. A negative `floor`
/// selects the default relative floor.
inline bool is_psd(const ComplexMatrix& a, double floor = -1.0) {
    const double f = floor < 0.0 ? default_psd_floor(a) : floor;
    return min_eigenvalue(a, 1e-9) >= -f;
}

/// V·diag(f(λ))·V† for a Hermitian matrix.
template <typename F>
ComplexMatrix apply_spectral(const ComplexMatrix& a, F&& f) {
    const HermitianEigenResult eig = hermitian_eig(a);
    const std::size_t n = a.rows();
    std::vector<Complex> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = f(eig.eigenvalues[i]);
    return eig.eigenvectors * ComplexMatrix::diagonal(diag) * adjoint(eig.eigenvectors);
}

/// Principal inverse square root of a positive definite Hermitian matrix.
inline ComplexMatrix inverse_sqrt(const ComplexMatrix& a) {
    const HermitianEigenResult eig = hermitian_eig(a);
    if (eig.eigenvalues.front() <= 0.0) {
        throw Error(ErrorKind::NotPositive, "inverse_sqrt: matrix is not positive definite");
    }
    return apply_spectral(a, [](double x) { return Complex(1.0 / std::sqrt(x), 0.0); });
}

inline double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_shape(a, b, "max_abs_difference");
    double d = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
    return d;
}

}  // namespace symdisc
