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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qridge/common.hpp"
#include "qridge/linalg.hpp"
#include "qridge/predict.hpp"
#include "qridge/qprimitives.hpp"
#include "qridge/qstate.hpp"

namespace qridge {

/// Candidate regularization strengths: a linear grid by default, log-spaced
/// on request. A single-point grid is the degenerate {alpha_min}.
struct AlphaGrid {
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    std::size_t count = 1;
    bool log_spaced = false;

    void validate() const {
        if (count < 1) throw std::invalid_argument("alpha grid must have at least one point");
        if (!(alpha_min >= 0.0)) throw std::invalid_argument("alpha grid values must be >= 0");
        if (count > 1 && !(alpha_max > alpha_min))
            throw std::invalid_argument("alpha_max must exceed alpha_min");
        if (log_spaced && !(alpha_min > 0.0))
            throw std::invalid_argument("log-spaced alpha grid requires alpha_min > 0");
    }

    std::vector<double> values() const {
        validate();
        if (count == 1) return {alpha_min};
        std::vector<double> out(count);
        if (log_spaced) {
            const double lo = std::log(alpha_min);
            const double hi = std::log(alpha_max);
            for (std::size_t j = 0; j < count; ++j)
                out[j] = std::exp(lo + static_cast<double>(j) * (hi - lo) / static_cast<double>(count - 1));
        } else {
            for (std::size_t j = 0; j < count; ++j)
                out[j] = alpha_min +
                         static_cast<double>(j) * (alpha_max - alpha_min) / static_cast<double>(count - 1);
        }
        out.front() = alpha_min;
        out.back() = alpha_max;
        return out;
    }
};

/// Configuration of the hyperparameter-selection pipeline.
struct TuneConfig {
    PhaseEstimationConfig pe;
    double c2 = 1.0;
    std::size_t swap_test_shots = 0;
    std::uint64_t seed = 0;
    double lambda_cutoff = 1e-12;
    std::size_t max_qubits = kDefaultMaxQubits;
    std::size_t jobs = 1;
};

/// Output of one fitted-state preparation.
struct FittedState {
    StateVector state;  // ∝ Σ_r λ̃_r²/(λ̃_r²+α̃) ⟨u_r|y⟩ |u_r⟩
    double p2 = 0.0;    // exact ancilla |1⟩ branch mass
    double c2_used = 0.0;
    double clock_residual = 0.0;
    double encode_probability_matrix = 0.0;
    double encode_probability_y = 0.0;
    std::optional<double> lmr_error;
};

/// Per-candidate record of the loss evaluation.
struct AlphaResult {
    double alpha = 0.0;
    double loss = std::numeric_limits<double>::quiet_NaN();
    double p2 = 0.0;
    double fitted_overlap = 0.0;  // ⟨fitted|y⟩ from the signed swap test
    double c2_used = 0.0;
    double encode_probability_matrix = 0.0;
    double encode_probability_y = 0.0;
    std::string error;  // empty on success
};

struct TuneOutcome {
    std::vector<AlphaResult> results;  // grid order
    double selected_alpha = 0.0;
    double classical_selected_alpha = 0.0;
};

/// Prepares the normalized fitted-value state for one alpha: estimate the
/// squared spectrum against |y⟩, rotate the ancilla by C₂λ̃²/(λ̃²+α̃),
/// undo the estimation and post-select the ancilla on |1⟩. The unnormalized
/// fitted vector is recovered as (√p2/C₂) times the returned state.
inline FittedState fitted_state(const RealMatrix& x, const RealVector& y, double alpha,
                                const TuneConfig& cfg) {
    cfg.pe.validate();
    if (y.size() != x.rows()) throw std::invalid_argument("fitted_state: y length does not match rows");
    if (!all_finite(y)) throw std::invalid_argument("fitted_state: non-finite input");
    if (!(alpha >= 0.0)) throw std::invalid_argument("fitted_state: alpha must be >= 0");
    if (!(cfg.c2 > 0.0)) throw std::invalid_argument("fitted_state: C2 must be positive");
    if (std::abs(norm(y) - 1.0) > 1e-6)
        throw std::invalid_argument("fitted_state: y must be unit-normalized");

    const detail::NormalizedProblem prob = detail::analyze(x, cfg.lambda_cutoff);

    EigenRotationSpec spec;
    spec.mode = RotationMode::kFilter;
    spec.alpha = prob.normalized_alpha(alpha);
    spec.constant = cfg.c2;
    spec.precision_bits = cfg.pe.precision_bits;
    spec.evolution_time = cfg.pe.evolution_time;
    spec.validate_on(prob.lambda2);

    const std::size_t row_width = detail::register_width_for(x.rows());
    const std::size_t col_width = detail::register_width_for(x.cols());

    EncodingResult enc_x = encode_matrix(
        x, QubitRegisterLayout({{"m", row_width}, {"n", col_width}}, cfg.max_qubits));
    const DensityMatrix rho = partial_trace(enc_x.state, "m");
    DensityExponentialResult dex = density_exponential(rho, cfg.pe.evolution_time, cfg.pe);
    const ComplexMatrix u = dex.approximation_error ? polar_unitary(dex.matrix) : dex.matrix;

    EncodingResult enc_y =
        amplitude_encode(y, QubitRegisterLayout({{"row", row_width}}, cfg.max_qubits));
    StateVector state = tensor(
        enc_y.state,
        StateVector::zero_state(QubitRegisterLayout({{"clock", cfg.pe.precision_bits}}, cfg.max_qubits)));
    state = tensor(state, StateVector::zero_state(QubitRegisterLayout({{"anc", 1}}, cfg.max_qubits)));

    state = phase_estimation(state, u, "row", "clock", cfg.pe);
    state = eigen_rotation(state, "clock", "anc", spec);
    InversePhaseEstimationResult undone =
        inverse_phase_estimation(state, u, "row", "clock", cfg.pe);

    double p2 = 0.0;
    {
        const std::uint64_t anc_mask = undone.state.layout().mask("anc");
        for (std::uint64_t s = 0; s < undone.state.dimension(); ++s) {
            if (s & anc_mask) p2 += std::norm(undone.state.amplitude(s));
        }
    }
    if (p2 < 1e-12)
        throw std::runtime_error("post-selection starved: y has no weight in the filtered column space");
    PostSelection kept = postselect(undone.state, "anc", "1");

    return FittedState{drop_register(kept.collapsed, "anc"), kept.probability,
                       cfg.c2,           undone.clock_residual,
                       enc_x.success_probability, enc_y.success_probability,
                       dex.approximation_error};
}

/// E(α) = p2/C₂² + 1 − 2(√p2/C₂)·⟨fitted|y⟩, the squared distance between
/// the fitted vector and the unit-norm target, with the cross term obtained
/// from the sign-revealing swap test.
inline AlphaResult quantum_loss(const RealMatrix& x, const RealVector& y, double alpha,
                                const TuneConfig& cfg) {
    FittedState fitted = fitted_state(x, y, alpha, cfg);
    const std::size_t row_width = detail::register_width_for(x.rows());
    EncodingResult enc_y =
        amplitude_encode(y, QubitRegisterLayout({{"row", row_width}}, cfg.max_qubits));
    const SwapTestResult swap =
        signed_swap_test(fitted.state, enc_y.state, cfg.swap_test_shots, cfg.seed);

    AlphaResult result;
    result.alpha = alpha;
    result.p2 = fitted.p2;
    result.fitted_overlap = swap.estimate;
    result.c2_used = fitted.c2_used;
    result.encode_probability_matrix = fitted.encode_probability_matrix;
    result.encode_probability_y = fitted.encode_probability_y;
    result.loss = fitted.p2 / (cfg.c2 * cfg.c2) + 1.0 -
                  2.0 * std::sqrt(fitted.p2) / cfg.c2 * swap.estimate;
    return result;
}

/// Evaluates the loss over the whole grid (optionally with a worker pool),
/// then picks the minimizer, breaking ties toward the larger alpha. The
/// classical grid argmin is computed alongside as a cross-check.
inline TuneOutcome tune(const RealMatrix& x, const RealVector& y, const AlphaGrid& grid,
                        const TuneConfig& cfg) {
    grid.validate();
    const std::vector<double> alphas = grid.values();
    const double y_norm = norm(y);
    if (!(y_norm > 0.0)) throw std::invalid_argument("tune: y must be nonzero");
    RealVector y_unit(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) y_unit[i] = y[i] / y_norm;

    TuneOutcome outcome;
    outcome.results.resize(alphas.size());

    const auto evaluate = [&](std::size_t j) {
        TuneConfig local = cfg;
        local.seed = mix_seed(cfg.seed, j);
        try {
            outcome.results[j] = quantum_loss(x, y_unit, alphas[j], local);
        } catch (const std::exception& e) {
            outcome.results[j].alpha = alphas[j];
            outcome.results[j].error = e.what();
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.jobs, alphas.size()));
    if (workers == 1) {
        for (std::size_t j = 0; j < alphas.size(); ++j) evaluate(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < alphas.size(); j = next.fetch_add(1))
                    evaluate(j);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<double> valid_losses;
    std::vector<double> valid_alphas;
    for (const auto& r : outcome.results) {
        if (r.error.empty()) {
            valid_losses.push_back(r.loss);
            valid_alphas.push_back(r.alpha);
        }
    }
    if (valid_losses.empty())
        throw std::runtime_error("all alpha candidates failed: " + outcome.results.front().error);
    outcome.selected_alpha =
        valid_alphas[detail::argmin_loss_prefer_large_alpha(valid_losses, valid_alphas)];

    const SVDResult sv = svd(x, cfg.lambda_cutoff);
    outcome.classical_selected_alpha = classical_alpha_argmin(sv, y_unit, alphas);
    return outcome;
}

}  // namespace qridge
