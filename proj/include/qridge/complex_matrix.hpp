// Copyright 2026 The qridge Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qridge/common.hpp"
#include "qridge/linalg.hpp"

namespace qridge {

/// Dense complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols, cdouble value = cdouble(0.0, 0.0))
        : rows_(rows), cols_(cols), data_(rows * cols, value) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<cdouble>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static ComplexMatrix from_real(const RealMatrix& r) {
        ComplexMatrix m(r.rows(), r.cols());
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j) m(i, j) = r(i, j);
        return m;
    }

    cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    cdouble operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix a(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) a(j, i) = std::conj((*this)(i, j));
        return a;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cdouble& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    bool all_finite() const {
        for (const cdouble& x : data_) {
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        }
        return true;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference: dimension mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

/// max |(U†U − I)_{ij}|.
inline double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) return 1.0;
    const ComplexMatrix g = u.adjoint() * u;
    double defect = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            defect = std::max(defect, std::abs(g(i, j) - (i == j ? cdouble(1.0) : cdouble(0.0))));
    return defect;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-10) {
    return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

inline ComplexMatrix matrix_power(ComplexMatrix base, std::uint64_t exponent) {
    if (base.rows() != base.cols()) throw std::invalid_argument("matrix_power: square matrix required");
    ComplexMatrix result = ComplexMatrix::identity(base.rows());
    while (exponent > 0) {
        if (exponent & 1ULL) result = result * base;
        exponent >>= 1;
        if (exponent > 0) base = base * base;
    }
    return result;
}

struct HermitianEigensystem {
    RealVector eigenvalues;  // ascending
    ComplexMatrix vectors;   // columns, matching eigenvalue order
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. The input is
/// symmetrized as (A + A†)/2 before iterating.
inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& matrix) {
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("hermitian_eigensystem: square matrix required");
    const std::size_t n = matrix.rows();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (matrix(i, j) + std::conj(matrix(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = a.max_abs();
    if (scale == 0.0) scale = 1.0;
    const double tol = 1e-15 * scale;
    const std::size_t max_sweeps = 100;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= tol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble w = a(p, q);
                const double aw = std::abs(w);
                if (aw <= tol) continue;
                const cdouble phase = w / aw;  // e^{iφ}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double zeta = (aqq - app) / (2.0 * aw);
                const double t = (zeta >= 0.0 ? -1.0 : 1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // J = [[c, -s],[s e^{-iφ}, c e^{-iφ}]] on columns (p, q); A ← J†AJ, V ← VJ.
                const cdouble jpq = -s;
                const cdouble jqp = s * std::conj(phase);
                const cdouble jqq = c * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap + jqp * aq;
                    a(i, q) = jpq * ap + jqq * aq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cdouble ap = a(p, j), aq = a(q, j);
                    a(p, j) = c * ap + std::conj(jqp) * aq;
                    a(q, j) = std::conj(jpq) * ap + std::conj(jqq) * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp + jqp * vq;
                    v(i, q) = jpq * vp + jqq * vq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEigensystem out;
    out.eigenvalues.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

/// Spectral norm via the largest eigenvalue of A†A.
inline double operator_norm(const ComplexMatrix& a) {
    const HermitianEigensystem es = hermitian_eigensystem(a.adjoint() * a);
    return std::sqrt(std::max(0.0, es.eigenvalues.back()));
}

/// Σ_k f(λ_k) |k⟩⟨k| for Hermitian input.
template <typename F>
inline ComplexMatrix hermitian_function(const ComplexMatrix& a, F&& f) {
    const HermitianEigensystem es = hermitian_eigensystem(a);
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cdouble fk = f(es.eigenvalues[k]);
        for (std::size_t i = 0; i < n; ++i) {
            const cdouble vik = es.vectors(i, k);
            if (vik == cdouble(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += fk * vik * std::conj(es.vectors(j, k));
        }
    }
    return out;
}

/// Closest unitary in the polar sense: A (A†A)^{-1/2}.
inline ComplexMatrix polar_unitary(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("polar_unitary: square matrix required");
    const ComplexMatrix inv_sqrt = hermitian_function(a.adjoint() * a, [](double lam) -> cdouble {
        if (lam < 1e-14) throw std::runtime_error("polar_unitary: matrix is numerically singular");
        return cdouble(1.0 / std::sqrt(lam), 0.0);
    });
    return a * inv_sqrt;
}

}  // namespace qridge
