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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "qridge/complex_matrix.hpp"
#include "qridge/linalg.hpp"
#include "qridge/qstate.hpp"

namespace qridge::testing {

/// Haar-ish random orthogonal matrix via Gram-Schmidt on a Gaussian matrix.
inline RealMatrix random_orthogonal(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    RealMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        RealVector col(n);
        for (auto& v : col) v = nd(gen);
        for (std::size_t prev = 0; prev < c; ++prev) {
            const RealVector p = m.column(prev);
            const double proj = dot(p, col);
            for (std::size_t i = 0; i < n; ++i) col[i] -= proj * p[i];
        }
        const double len = norm(col);
        if (len < 1e-8) throw std::runtime_error("degenerate random orthogonal draw");
        for (std::size_t i = 0; i < n; ++i) m(i, c) = col[i] / len;
    }
    return m;
}

/// Random unitary via Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    ComplexMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<cdouble> col(n);
        for (auto& v : col) v = cdouble(nd(gen), nd(gen));
        for (std::size_t prev = 0; prev < c; ++prev) {
            cdouble proj(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(m(i, prev)) * col[i];
            for (std::size_t i = 0; i < n; ++i) col[i] -= proj * m(i, prev);
        }
        double len = 0.0;
        for (const auto& v : col) len += std::norm(v);
        len = std::sqrt(len);
        if (len < 1e-8) throw std::runtime_error("degenerate random unitary draw");
        for (std::size_t i = 0; i < n; ++i) m(i, c) = col[i] / len;
    }
    return m;
}

inline StateVector random_state(const QubitRegisterLayout& layout, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    std::vector<cdouble> amps(layout.dimension());
    for (auto& a : amps) a = cdouble(nd(gen), nd(gen));
    return make_state(layout, std::move(amps));
}

inline StateVector random_real_state(const QubitRegisterLayout& layout, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    std::vector<cdouble> amps(layout.dimension());
    for (auto& a : amps) a = cdouble(nd(gen), 0.0);
    return make_state(layout, std::move(amps));
}

inline RealVector random_unit_vector(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    RealVector v(n);
    for (auto& x : v) x = nd(gen);
    const double len = norm(v);
    for (auto& x : v) x /= len;
    return v;
}

/// Builds M x N matrices with a chosen singular spectrum by rotating a
/// diagonal core with random orthogonal factors.
inline RealMatrix matrix_with_spectrum(std::size_t m, std::size_t n,
                                       const RealVector& singular_values, std::mt19937_64& gen) {
    const RealMatrix qu = random_orthogonal(m, gen);
    const RealMatrix qv = random_orthogonal(n, gen);
    RealMatrix x(m, n);
    for (std::size_t r = 0; r < singular_values.size(); ++r) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) x(i, j) += singular_values[r] * qu(i, r) * qv(j, r);
    }
    return x;
}

/// Matrix whose Frobenius-normalized squared spectrum is exactly the given
/// dyadic weight vector (weights must sum to 1), so a t-bit clock reads the
/// spectrum exactly at the default evolution time.
inline RealMatrix dyadic_matrix(std::size_t m, std::size_t n, const RealVector& weights,
                                std::mt19937_64& gen, double scale = 1.0) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("dyadic weights must sum to 1");
    RealVector lams(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) lams[i] = std::sqrt(weights[i]) * scale;
    return matrix_with_spectrum(m, n, lams, gen);
}

/// Independent ridge oracle: solves (XᵀX + αI) w = Xᵀ y by Gaussian
/// elimination with partial pivoting. Deliberately avoids the SVD path.
inline RealVector ridge_by_elimination(const RealMatrix& x, const RealVector& y, double alpha) {
    const std::size_t n = x.cols();
    RealMatrix a(n, n);
    RealVector b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < x.rows(); ++k) s += x(k, i) * x(k, j);
            a(i, j) = s + (i == j ? alpha : 0.0);
        }
        double s = 0.0;
        for (std::size_t k = 0; k < x.rows(); ++k) s += x(k, i) * y[k];
        b[i] = s;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (std::abs(a(pivot, col)) < 1e-14) throw std::runtime_error("singular normal equations");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    RealVector w(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a(ri, c) * w[c];
        w[ri] = s / a(ri, ri);
    }
    return w;
}

}  // namespace qridge::testing
