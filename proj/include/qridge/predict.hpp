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
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qridge/common.hpp"
#include "qridge/linalg.hpp"
#include "qridge/qprimitives.hpp"
#include "qridge/qstate.hpp"

namespace qridge {

enum class ConstantPolicy {
    kAuto,      // derive the rotation constant from the preprocessing spectrum
    kExplicit,  // caller-provided value
};

/// Configuration of the end-to-end prediction pipeline.
struct PredictConfig {
    PhaseEstimationConfig pe;
    ConstantPolicy c1_policy = ConstantPolicy::kAuto;
    double c1_value = 0.0;
    std::size_t swap_test_shots = 0;  // 0 = analytic swap test
    std::uint64_t seed = 0;
    double lambda_cutoff = 1e-12;
    std::size_t max_qubits = kDefaultMaxQubits;
    bool capture_states = false;  // retain the two pre-swap-test states
};

/// Prediction plus every intermediate quantity the tests care about.
struct PredictOutcome {
    double y_prime = 0.0;             // rescaled to raw data units
    double y_prime_normalized = 0.0;  // prediction for unit-norm inputs on X/‖X‖_F
    double p1 = 0.0;                  // ancilla |1⟩ post-selection probability
    double swap_estimate = 0.0;       // ⟨solution|reference⟩ estimate
    double swap_success_probability = 0.0;
    double c1_used = 0.0;
    double clock_residual = 0.0;
    // Preparation success probabilities; far below 1 means the input is
    // badly unbalanced and hardware repetition costs would soar. Reported,
    // never enforced.
    double encode_probability_matrix = 0.0;
    double encode_probability_y = 0.0;      // 0 for a zero target
    double encode_probability_x_new = 0.0;  // 0 for a zero input
    std::map<double, double> clock_readout;  // decoded eigenvalue -> clock mass after estimation
    std::optional<double> lmr_error;
    std::optional<StateVector> solution_state;   // |φ₅⟩, set when capture_states
    std::optional<StateVector> reference_state;  // |φ₆⟩, set when capture_states
};

namespace detail {

/// Classical preprocessing shared by both pipelines: the SVD of the raw
/// design matrix and its Frobenius-normalized squared spectrum, which is
/// exactly what the encoded state exposes to phase estimation.
struct NormalizedProblem {
    SVDResult sv;
    double frobenius = 0.0;
    std::vector<double> lambda2;  // λ̃_r² = (λ_r/‖X‖_F)², descending

    double normalized_alpha(double alpha) const { return alpha / (frobenius * frobenius); }
};

inline NormalizedProblem analyze(const RealMatrix& x, double lambda_cutoff) {
    NormalizedProblem out;
    out.sv = svd(x, lambda_cutoff);
    out.frobenius = x.frobenius_norm();
    out.lambda2.resize(out.sv.rank);
    for (std::size_t r = 0; r < out.sv.rank; ++r) {
        const double lam = out.sv.singular_values[r] / out.frobenius;
        out.lambda2[r] = lam * lam;
    }
    return out;
}

/// Largest constant keeping the inverse-shift amplitude below 1 on every
/// clock bin the preprocessing spectrum decodes to, scaled by 0.999.
inline double auto_inverse_shift_constant(const EigenRotationSpec& spec,
                                          const std::vector<double>& lambda2) {
    double lowest = std::numeric_limits<double>::infinity();
    for (double lam2 : lambda2)
        lowest = std::min(lowest, spec.decode_eigenvalue(spec.encode_eigenvalue(lam2)) + spec.alpha);
    if (!(lowest > 0.0))
        throw std::runtime_error("eigenvalue below clock resolution with alpha = 0; "
                                 "raise precision_bits or alpha");
    return 0.999 * lowest;
}

/// Marginal clock distribution keyed by decoded eigenvalue.
inline std::map<double, double> clock_histogram(const StateVector& state,
                                                const std::string& clock_register,
                                                const EigenRotationSpec& spec) {
    const auto& layout = state.layout();
    const std::size_t shift = layout.shift(clock_register);
    const std::uint64_t mask = (1ULL << layout.width(clock_register)) - 1ULL;
    std::vector<double> mass(mask + 1, 0.0);
    for (std::uint64_t s = 0; s < state.dimension(); ++s)
        mass[(s >> shift) & mask] += std::norm(state.amplitude(s));
    std::map<double, double> histogram;
    for (std::uint64_t c = 0; c <= mask; ++c) {
        if (mass[c] > 1e-15) histogram[spec.decode_eigenvalue(c)] += mass[c];
    }
    return histogram;
}

inline std::size_t register_width_for(std::size_t count) {
    return std::max<std::size_t>(1, ceil_log2(count));
}

}  // namespace detail

/// Runs the full prediction pipeline on raw data: encode y, x′ and X,
/// estimate the squared singular values of X via its reduced density
/// operator, rotate an ancilla by C₁/(λ̃²+α̃), undo the estimation,
/// post-select, and read the ridge prediction off a sign-revealing swap
/// test between the surviving state and |y⟩|x′⟩.
///
/// The rotation runs in the Frobenius-normalized problem (λ̃ = λ/‖X‖_F,
/// α̃ = α/‖X‖²_F), so the raw-unit prediction is recovered as
/// y′ = (√p1/C₁)·⟨φ₅|φ₆⟩ · ‖y‖‖x′‖/‖X‖_F.
inline PredictOutcome predict(const RealMatrix& x, const RealVector& y, const RealVector& x_new,
                              double alpha, const PredictConfig& cfg) {
    cfg.pe.validate();
    if (y.size() != x.rows()) throw std::invalid_argument("predict: y length does not match rows");
    if (x_new.size() != x.cols()) throw std::invalid_argument("predict: x_new length does not match cols");
    if (!all_finite(y) || !all_finite(x_new)) throw std::invalid_argument("predict: non-finite input");
    if (!(alpha >= 0.0)) throw std::invalid_argument("predict: alpha must be >= 0");

    const detail::NormalizedProblem prob = detail::analyze(x, cfg.lambda_cutoff);
    const double alpha_n = prob.normalized_alpha(alpha);

    EigenRotationSpec spec;
    spec.mode = RotationMode::kInverseShift;
    spec.alpha = alpha_n;
    spec.precision_bits = cfg.pe.precision_bits;
    spec.evolution_time = cfg.pe.evolution_time;
    spec.constant = cfg.c1_policy == ConstantPolicy::kAuto
                        ? detail::auto_inverse_shift_constant(spec, prob.lambda2)
                        : cfg.c1_value;
    if (!(spec.constant > 0.0)) throw std::invalid_argument("predict: C1 must be positive");
    spec.validate_on(prob.lambda2);

    const std::size_t row_width = detail::register_width_for(x.rows());
    const std::size_t col_width = detail::register_width_for(x.cols());

    EncodingResult enc = encode_matrix(
        x, QubitRegisterLayout({{"row", row_width}, {"col", col_width}}, cfg.max_qubits));
    const DensityMatrix rho = partial_trace(enc.state, "row");
    DensityExponentialResult dex = density_exponential(rho, cfg.pe.evolution_time, cfg.pe);
    const ComplexMatrix u = dex.approximation_error ? polar_unitary(dex.matrix) : dex.matrix;

    PredictOutcome outcome;
    outcome.c1_used = spec.constant;
    outcome.lmr_error = dex.approximation_error;
    outcome.encode_probability_matrix = enc.success_probability;

    StateVector state = tensor(
        enc.state,
        StateVector::zero_state(QubitRegisterLayout({{"clock", cfg.pe.precision_bits}}, cfg.max_qubits)));
    state = tensor(state, StateVector::zero_state(QubitRegisterLayout({{"anc", 1}}, cfg.max_qubits)));

    state = phase_estimation(state, u, "row", "clock", cfg.pe);
    outcome.clock_readout = detail::clock_histogram(state, "clock", spec);
    state = eigen_rotation(state, "clock", "anc", spec);
    InversePhaseEstimationResult undone =
        inverse_phase_estimation(state, u, "row", "clock", cfg.pe);
    outcome.clock_residual = undone.clock_residual;

    {
        double anc_mass = 0.0;
        const std::uint64_t anc_mask = undone.state.layout().mask("anc");
        for (std::uint64_t s = 0; s < undone.state.dimension(); ++s) {
            if (s & anc_mask) anc_mass += std::norm(undone.state.amplitude(s));
        }
        if (anc_mass < 1e-12) throw std::runtime_error("post-selection starved");
    }
    PostSelection kept = postselect(undone.state, "anc", "1");
    outcome.p1 = kept.probability;
    StateVector solution = drop_register(kept.collapsed, "anc");

    const double y_norm = norm(y);
    const double x_new_norm = norm(x_new);
    if (y_norm < 1e-300 || x_new_norm < 1e-300) {
        // A zero factor makes the prediction identically zero; there is no
        // reference state to compare against.
        outcome.swap_estimate = 0.0;
        outcome.swap_success_probability = 0.25;
        outcome.y_prime_normalized = 0.0;
        outcome.y_prime = 0.0;
        if (cfg.capture_states) outcome.solution_state = std::move(solution);
        return outcome;
    }

    EncodingResult enc_y =
        amplitude_encode(y, QubitRegisterLayout({{"row", row_width}}, cfg.max_qubits));
    EncodingResult enc_x =
        amplitude_encode(x_new, QubitRegisterLayout({{"col", col_width}}, cfg.max_qubits));
    outcome.encode_probability_y = enc_y.success_probability;
    outcome.encode_probability_x_new = enc_x.success_probability;
    StateVector reference = tensor(enc_y.state, enc_x.state);

    const SwapTestResult swap = signed_swap_test(solution, reference, cfg.swap_test_shots, cfg.seed);
    outcome.swap_estimate = swap.estimate;
    outcome.swap_success_probability = swap.success_probability;
    outcome.y_prime_normalized = std::sqrt(outcome.p1) / spec.constant * swap.estimate;
    outcome.y_prime = outcome.y_prime_normalized * y_norm * x_new_norm / prob.frobenius;

    if (cfg.capture_states) {
        outcome.solution_state = std::move(solution);
        outcome.reference_state = std::move(reference);
    }
    return outcome;
}

/// Runs the pipeline and cross-checks the measured post-selection
/// probability against Σ_r λ̃_r² C₁²/(λ̃_r²+α̃)² evaluated on the decoded
/// clock spectrum. The check is asserted (to 1e-9) whenever the spectrum is
/// exactly representable in t clock bits; otherwise the measured value is
/// returned as-is.
inline double predict_diagnostic_p1(const RealMatrix& x, const RealVector& y,
                                    const RealVector& x_new, double alpha,
                                    const PredictConfig& cfg) {
    if (cfg.swap_test_shots != 0 || !cfg.pe.exact_unitary)
        throw std::invalid_argument("predict_diagnostic_p1 requires exact mode");
    const PredictOutcome outcome = predict(x, y, x_new, alpha, cfg);

    const detail::NormalizedProblem prob = detail::analyze(x, cfg.lambda_cutoff);
    EigenRotationSpec spec;
    spec.mode = RotationMode::kInverseShift;
    spec.alpha = prob.normalized_alpha(alpha);
    spec.precision_bits = cfg.pe.precision_bits;
    spec.evolution_time = cfg.pe.evolution_time;
    spec.constant = outcome.c1_used;

    const double bins = static_cast<double>(1ULL << cfg.pe.precision_bits);
    bool dyadic = true;
    double expected = 0.0;
    for (double lam2 : prob.lambda2) {
        const double clock = lam2 * cfg.pe.evolution_time / (2.0 * kPi) * bins;
        if (std::abs(clock - std::round(clock)) > 1e-9) dyadic = false;
        const double f = spec.amplitude(spec.decode_eigenvalue(spec.encode_eigenvalue(lam2)));
        expected += lam2 * f * f;
    }
    if (dyadic && std::abs(outcome.p1 - expected) > 1e-9)
        throw std::runtime_error("p1 diagnostic mismatch: measured " + std::to_string(outcome.p1) +
                                 " vs formula " + std::to_string(expected));
    return outcome.p1;
}

}  // namespace qridge
