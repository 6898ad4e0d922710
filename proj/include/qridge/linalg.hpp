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
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qridge/common.hpp"

namespace qridge {

using RealVector = std::vector<double>;

inline double dot(const RealVector& a, const RealVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const RealVector& a) { return std::sqrt(dot(a, a)); }

/// Dense real matrix, row-major.
class RealMatrix {
  public:
    RealMatrix() = default;

    RealMatrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    }

    static RealMatrix identity(std::size_t n) {
        RealMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static RealMatrix diagonal(const RealVector& d) {
        RealMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RealVector row(std::size_t r) const {
        RealVector out(cols_);
        for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
        return out;
    }

    RealVector column(std::size_t c) const {
        RealVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    RealMatrix transposed() const {
        RealMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double x : data_) s += x * x;
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    bool all_finite() const {
        for (double x : data_) {
            if (!std::isfinite(x)) return false;
        }
        return true;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
    RealMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline RealVector operator*(const RealMatrix& a, const RealVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    RealVector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

/// Reduced singular value decomposition X = U diag(λ) Vᵀ restricted to the
/// retained spectrum (descending λ, all positive).
struct SVDResult {
    RealMatrix u;                // M x R, orthonormal columns
    RealMatrix v;                // N x R, orthonormal columns
    RealVector singular_values;  // descending, length R
    std::size_t rank = 0;
    double condition_number = 1.0;
};

/// One-sided Jacobi SVD. Singular values at or below lambda_cutoff * λ_max
/// are dropped from the retained rank.
inline SVDResult svd(const RealMatrix& x, double lambda_cutoff = 1e-12) {
    if (!x.all_finite()) throw std::invalid_argument("svd: matrix has non-finite entries");
    if (!(lambda_cutoff >= 0.0 && lambda_cutoff < 1.0))
        throw std::invalid_argument("svd: lambda_cutoff must lie in [0, 1)");

    const bool transposed = x.rows() < x.cols();
    RealMatrix g = transposed ? x.transposed() : x;  // m x n with m >= n
    const std::size_t m = g.rows();
    const std::size_t n = g.cols();
    RealMatrix v = RealMatrix::identity(n);

    // Hestenes rotations until every column pair is numerically orthogonal.
    const double tol = 1e-13;
    const std::size_t max_sweeps = 64;
    bool converged = false;
    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += g(i, p) * g(i, p);
                    aqq += g(i, q) * g(i, q);
                    apq += g(i, p) * g(i, q);
                }
                if (apq == 0.0 || app * aqq == 0.0) continue;
                if (std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
                converged = false;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double gp = g(i, p), gq = g(i, q);
                    g(i, p) = c * gp - s * gq;
                    g(i, q) = s * gp + c * gq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged) throw std::runtime_error("svd: Jacobi sweep limit reached without convergence");

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += g(i, j) * g(i, j);
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

    const double lambda_max = sigma[order[0]];
    if (!(lambda_max > 0.0)) throw std::invalid_argument("zero matrix has no retained spectrum");

    std::size_t rank = 0;
    while (rank < n && sigma[order[rank]] > lambda_cutoff * lambda_max) ++rank;

    RealMatrix uu(m, rank);
    RealMatrix vv(n, rank);
    RealVector values(rank);
    for (std::size_t r = 0; r < rank; ++r) {
        const std::size_t j = order[r];
        values[r] = sigma[j];
        for (std::size_t i = 0; i < m; ++i) uu(i, r) = g(i, j) / sigma[j];
        for (std::size_t i = 0; i < n; ++i) vv(i, r) = v(i, j);
    }

    SVDResult out;
    out.singular_values = std::move(values);
    out.rank = rank;
    out.condition_number = out.singular_values.front() / out.singular_values.back();
    if (transposed) {
        out.u = std::move(vv);
        out.v = std::move(uu);
    } else {
        out.u = std::move(uu);
        out.v = std::move(vv);
    }
    return out;
}

/// Ridge solution for one regularization strength.
struct RidgeSolution {
    double alpha = 0.0;
    RealVector weights;
};

/// w = Σ_r λ_r/(λ_r²+α) (u_r·y) v_r.
inline RidgeSolution ridge_weights(const SVDResult& sv, const RealVector& y, double alpha) {
    if (y.size() != sv.u.rows()) throw std::invalid_argument("ridge_weights: y length mismatch");
    if (!all_finite(y)) throw std::invalid_argument("ridge_weights: y has non-finite entries");
    if (!(alpha >= 0.0)) throw std::invalid_argument("ridge_weights: alpha must be >= 0");
    const double lambda_max = sv.singular_values.front();
    if (alpha == 0.0) {
        for (double lam : sv.singular_values) {
            if (lam < 1e-12 * lambda_max) throw std::runtime_error("ill-conditioned OLR limit");
        }
    }
    RidgeSolution sol;
    sol.alpha = alpha;
    sol.weights.assign(sv.v.rows(), 0.0);
    for (std::size_t r = 0; r < sv.rank; ++r) {
        const double lam = sv.singular_values[r];
        const double factor = lam / (lam * lam + alpha) * dot(sv.u.column(r), y);
        for (std::size_t i = 0; i < sol.weights.size(); ++i) sol.weights[i] += factor * sv.v(i, r);
    }
    return sol;
}

/// y' = x_new · w.
inline double ridge_predict(const RidgeSolution& sol, const RealVector& x_new) {
    if (x_new.size() != sol.weights.size()) throw std::invalid_argument("ridge_predict: x_new length mismatch");
    return dot(sol.weights, x_new);
}

/// ŷ = Σ_r λ_r²/(λ_r²+α) (u_r·y) u_r, the in-sample fitted values.
inline RealVector fitted_values(const SVDResult& sv, const RealVector& y, double alpha) {
    if (y.size() != sv.u.rows()) throw std::invalid_argument("fitted_values: y length mismatch");
    if (!(alpha >= 0.0)) throw std::invalid_argument("fitted_values: alpha must be >= 0");
    const double lambda_max = sv.singular_values.front();
    if (alpha == 0.0) {
        for (double lam : sv.singular_values) {
            if (lam < 1e-12 * lambda_max) throw std::runtime_error("ill-conditioned OLR limit");
        }
    }
    RealVector out(y.size(), 0.0);
    for (std::size_t r = 0; r < sv.rank; ++r) {
        const double lam2 = sv.singular_values[r] * sv.singular_values[r];
        const double factor = lam2 / (lam2 + alpha) * dot(sv.u.column(r), y);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += factor * sv.u(i, r);
    }
    return out;
}

/// E(α) = ‖ŷ − y‖² for unit-norm y.
inline double classical_loss(const SVDResult& sv, const RealVector& y, double alpha) {
    if (std::abs(norm(y) - 1.0) > 1e-10) throw std::invalid_argument("classical_loss: y must have unit norm");
    const RealVector fit = fitted_values(sv, y, alpha);
    double e = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = fit[i] - y[i];
        e += d * d;
    }
    return e;
}

namespace detail {

/// Among losses within 1e-12 of the minimum, picks the largest alpha
/// (prefer the stronger regularizer at equal loss).
inline std::size_t argmin_loss_prefer_large_alpha(const std::vector<double>& losses,
                                                  const std::vector<double>& alphas) {
    const double min_loss = *std::min_element(losses.begin(), losses.end());
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < losses.size(); ++i) {
        if (losses[i] <= min_loss + 1e-12) {
            if (!found || alphas[i] > alphas[best]) best = i;
            found = true;
        }
    }
    return best;
}

}  // namespace detail

/// Grid argmin of classical_loss; ties resolved toward the larger alpha.
inline double classical_alpha_argmin(const SVDResult& sv, const RealVector& y,
                                     const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("classical_alpha_argmin: empty grid");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!(sorted[i] >= 0.0)) throw std::invalid_argument("classical_alpha_argmin: alpha must be >= 0");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw std::invalid_argument("classical_alpha_argmin: grid values must be distinct");
    }
    std::vector<double> losses(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) losses[i] = classical_loss(sv, y, grid[i]);
    return grid[detail::argmin_loss_prefer_large_alpha(losses, grid)];
}

}  // namespace qridge
