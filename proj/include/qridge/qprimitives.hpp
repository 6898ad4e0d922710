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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qridge/common.hpp"
#include "qridge/complex_matrix.hpp"
#include "qridge/linalg.hpp"
#include "qridge/qstate.hpp"

namespace qridge {

inline constexpr double kDefaultEvolutionTime = kPi;
inline constexpr std::size_t kMaxPrecisionBits = 12;

/// Amplitude-encoded state plus the preparation bookkeeping needed to undo
/// the normalization later.
struct EncodingResult {
    StateVector state;
    double success_probability = 0.0;  // exact flag-qubit branch mass
    double source_norm = 0.0;          // Euclidean norm of the raw input
};

/// Parameters of the eigenvalue-estimation stage.
///
/// Eigenphase convention: the simulated evolution is U = e^{iρt₀}. With the
/// default t₀ = π, eigenvalues of ρ in [0, 1] land on phases in [0, 1/2), so
/// a t-bit clock value c decodes to eigenvalue 2c/2^t with no wraparound.
struct PhaseEstimationConfig {
    std::size_t precision_bits = 10;              // clock width t
    double evolution_time = kDefaultEvolutionTime;  // t0, phase radians per unit eigenvalue
    bool exact_unitary = true;                    // exact exponential vs sliced approximation
    std::size_t lmr_steps = 256;                  // Q, slices of the approximation

    double lmr_slice() const { return evolution_time / static_cast<double>(lmr_steps); }

    void validate() const {
        if (precision_bits < 1 || precision_bits > kMaxPrecisionBits)
            throw std::invalid_argument("precision_bits must lie in [1, 12]");
        if (!(evolution_time > 0.0) || !(evolution_time < 2.0 * kPi))
            throw std::invalid_argument("evolution_time must lie in (0, 2pi)");
        if (lmr_steps < 1) throw std::invalid_argument("lmr_steps must be >= 1");
    }
};

/// Conditioned ancilla rotation over clock values.
enum class RotationMode {
    kInverseShift,  // amplitude C/(λ²+α)
    kFilter,        // amplitude C·λ²/(λ²+α)
};

struct EigenRotationSpec {
    RotationMode mode = RotationMode::kInverseShift;
    double alpha = 0.0;
    double constant = 1.0;  // C₁ or C₂ depending on mode
    std::size_t precision_bits = 10;
    double evolution_time = kDefaultEvolutionTime;

    /// Eigenvalue represented by a clock basis value (bin center).
    double decode_eigenvalue(std::uint64_t clock_value) const {
        const double phase = static_cast<double>(clock_value) / static_cast<double>(1ULL << precision_bits);
        return phase * (2.0 * kPi) / evolution_time;
    }

    /// Clock value a given eigenvalue rounds to.
    std::uint64_t encode_eigenvalue(double lam2) const {
        const double c = lam2 * evolution_time / (2.0 * kPi) * static_cast<double>(1ULL << precision_bits);
        const auto rounded = static_cast<std::int64_t>(std::llround(c));
        const std::int64_t top = static_cast<std::int64_t>((1ULL << precision_bits) - 1);
        return static_cast<std::uint64_t>(std::clamp<std::int64_t>(rounded, 0, top));
    }

    /// Raw rotation amplitude before clamping.
    double raw_amplitude(double lam2) const {
        const double denom = lam2 + alpha;
        if (mode == RotationMode::kFilter) {
            if (lam2 <= 0.0) return 0.0;  // kernel components carry no weight
            if (denom <= 0.0) return 1.0;
            return constant * lam2 / denom;
        }
        if (denom <= 0.0) return std::numeric_limits<double>::infinity();
        return constant / denom;
    }

    /// Amplitude actually rotated by: clamped to the unit interval. Clock
    /// bins that no spectrum value decodes to can exceed 1 under the inverse
    /// shift (leakage bins near λ² = 0); those are saturated rather than
    /// rejected, and validate_on() polices the bins that matter.
    double amplitude(double lam2) const { return std::min(1.0, raw_amplitude(lam2)); }

    /// Verifies the rotation is realizable (f ≤ 1) on the clock bins the
    /// given eigenvalues decode to.
    void validate_on(std::span<const double> eigenvalues) const {
        for (double lam2 : eigenvalues) {
            const double bin = decode_eigenvalue(encode_eigenvalue(lam2));
            const double f = raw_amplitude(bin);
            if (!(f <= 1.0 + 1e-12))
                throw std::runtime_error("rotation saturation: amplitude " + std::to_string(f) +
                                         " > 1 at decoded eigenvalue " + std::to_string(bin));
        }
    }
};

/// Result of exponentiating a density matrix. In exact mode `matrix` is the
/// spectral e^{iρt₀}; in sliced mode it is the product of Q partial-swap
/// slices cos(Δt)·I + i·sin(Δt)·ρ, which is unitary only up to
/// O(t₀²/Q), with the operator-norm distance to the exact exponential
/// reported in `approximation_error`.
struct DensityExponentialResult {
    ComplexMatrix matrix;
    std::optional<double> approximation_error;
};

/// Outcome of undoing phase estimation: the clock is measured back onto
/// |0…0⟩ and removed; `clock_residual` is the amplitude mass that had
/// leaked off that branch (0 for exactly representable spectra).
struct InversePhaseEstimationResult {
    StateVector state;
    double clock_residual = 0.0;
};

/// Inner-product estimate from a swap-test circuit.
struct SwapTestResult {
    double estimate = 0.0;            // 4·Pr − 1 (signed) or 2·Pr − 1 (plain)
    double success_probability = 0.0; // exact Pr of the accepted ancilla outcome
    std::size_t shots = 0;            // 0 = analytic
};

namespace detail {

inline std::vector<std::size_t> register_shifts(const QubitRegisterLayout& layout,
                                                std::string_view name) {
    std::vector<std::size_t> shifts;
    for (std::size_t q : layout.qubits(name))
        shifts.push_back(qubit_shift(layout.qubit_count(), q));
    return shifts;
}

/// In-place QFT (or inverse QFT) on the given register qubits, MSB first.
/// Matches qft_matrix(): |j⟩ → (1/√D) Σ_k e^{2πijk/D} |k⟩.
inline void apply_qft_circuit(std::vector<cdouble>& amps, std::size_t n_qubits,
                              const std::vector<std::size_t>& shifts, bool inverse) {
    const std::size_t t = shifts.size();
    if (!inverse) {
        for (std::size_t j = 0; j < t; ++j) {
            apply_hadamard(amps, n_qubits, shifts[j]);
            for (std::size_t k = j + 1; k < t; ++k)
                apply_controlled_phase(amps, shifts[k], shifts[j], 2.0 * kPi / static_cast<double>(1ULL << (k - j + 1)));
        }
        for (std::size_t j = 0; j < t / 2; ++j) apply_swap_bits(amps, shifts[j], shifts[t - 1 - j]);
    } else {
        for (std::size_t j = 0; j < t / 2; ++j) apply_swap_bits(amps, shifts[j], shifts[t - 1 - j]);
        for (std::size_t jj = t; jj-- > 0;) {
            for (std::size_t k = t; k-- > jj + 1;)
                apply_controlled_phase(amps, shifts[k], shifts[jj], -2.0 * kPi / static_cast<double>(1ULL << (k - jj + 1)));
            apply_hadamard(amps, n_qubits, shifts[jj]);
        }
    }
}

/// Shared amplitude-encoding circuit over the flattened value table: uniform
/// superposition, reversible index lookup into a work register, a value-
/// conditioned flag rotation, uncompute. Returns the pre-measurement state:
/// layout [data..., _enc_work, _enc_flag].
inline StateVector encoding_circuit(const std::vector<double>& values,
                                    const QubitRegisterLayout& data_layout) {
    const std::size_t w = data_layout.qubit_count();
    if (values.size() != (1ULL << w)) throw std::invalid_argument("encoding_circuit: value table size");
    double vmax = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("cannot encode non-finite entries");
        vmax = std::max(vmax, std::abs(v));
    }
    if (vmax == 0.0) throw std::invalid_argument("cannot encode a zero vector");

    std::vector<QubitRegister> regs = data_layout.registers();
    regs.push_back({"_enc_work", w});
    regs.push_back({"_enc_flag", 1});
    QubitRegisterLayout layout(std::move(regs), data_layout.max_qubits());

    const std::size_t n = layout.qubit_count();
    std::vector<cdouble> amps(layout.dimension(), cdouble(0.0, 0.0));
    amps[0] = 1.0;

    // Uniform superposition over the data block (a QFT applied to |0…0⟩).
    for (std::size_t q = 0; q < w; ++q) apply_hadamard(amps, n, qubit_shift(n, q));

    const std::size_t data_shift = n - w;  // the data registers lead the layout
    const std::size_t work_shift = layout.shift("_enc_work");
    const std::size_t flag_shift = layout.shift("_enc_flag");

    apply_xor_copy(amps, data_shift, work_shift, w);
    std::vector<double> table(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) table[i] = values[i] / vmax;
    apply_multiplexed_rotation(amps, work_shift, w, flag_shift, table);
    apply_xor_copy(amps, data_shift, work_shift, w);

    return StateVector(std::move(layout), std::move(amps));
}

inline std::vector<double> flatten_padded(const RealVector& v, std::size_t width) {
    if (v.empty()) throw std::invalid_argument("cannot encode an empty vector");
    if (v.size() > (1ULL << width))
        throw std::invalid_argument("vector does not fit the register width");
    std::vector<double> values(1ULL << width, 0.0);
    std::copy(v.begin(), v.end(), values.begin());
    return values;
}

inline std::vector<double> flatten_padded(const RealMatrix& x, std::size_t row_width,
                                          std::size_t col_width) {
    if (x.rows() > (1ULL << row_width) || x.cols() > (1ULL << col_width))
        throw std::invalid_argument("matrix does not fit the register widths");
    std::vector<double> values(1ULL << (row_width + col_width), 0.0);
    for (std::size_t m = 0; m < x.rows(); ++m)
        for (std::size_t nn = 0; nn < x.cols(); ++nn)
            values[(m << col_width) | nn] = x(m, nn);
    return values;
}

}  // namespace detail

/// Dense QFT matrix: F_{kj} = e^{2πijk/2^w} / √(2^w).
inline ComplexMatrix qft_matrix(std::size_t width) {
    if (width < 1 || width > kMaxPrecisionBits)
        throw std::invalid_argument("qft width must lie in [1, 12]");
    const std::uint64_t d = 1ULL << width;
    ComplexMatrix f(d, d);
    const double inv = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::uint64_t k = 0; k < d; ++k)
        for (std::uint64_t j = 0; j < d; ++j)
            f(k, j) = std::polar(inv, 2.0 * kPi * static_cast<double>((j * k) % d) / static_cast<double>(d));
    return f;
}

/// Circuit-level QFT on one register (gate count t(t+1)/2, no dense matrix).
inline StateVector apply_qft(const StateVector& state, const std::string& register_name,
                             bool inverse = false) {
    std::vector<cdouble> amps = state.amplitudes();
    detail::apply_qft_circuit(amps, state.qubit_count(),
                              detail::register_shifts(state.layout(), register_name), inverse);
    return StateVector(state.layout(), std::move(amps));
}

/// Prepares Σ_i v_i/‖v‖ |i⟩ on the layout's single register by simulating
/// the lookup-rotate-uncompute circuit and post-selecting its flag qubit.
/// The success probability is the exact flag branch mass,
/// Σ_i v_i² / (2^w ‖v‖²_max).
inline EncodingResult amplitude_encode(const RealVector& v, const QubitRegisterLayout& layout) {
    if (layout.registers().size() != 1)
        throw std::invalid_argument("amplitude_encode expects a single-register layout");
    const std::size_t w = layout.registers().front().width;
    StateVector circuit = detail::encoding_circuit(detail::flatten_padded(v, w), layout);
    PostSelection ps = postselect(circuit, "_enc_flag", "1");
    StateVector state = drop_register(drop_register(ps.collapsed, "_enc_flag"), "_enc_work");
    return EncodingResult{std::move(state), ps.probability, norm(v)};
}

/// Prepares |X⟩ = Σ_{mn} x_{mn}/‖X‖_F |m⟩|n⟩ on a two-register layout
/// (rows first). The Schmidt coefficients of the result across the two
/// registers are the Frobenius-normalized singular values of X.
inline EncodingResult encode_matrix(const RealMatrix& x, const QubitRegisterLayout& layout) {
    if (layout.registers().size() != 2)
        throw std::invalid_argument("encode_matrix expects a two-register layout");
    if (!x.all_finite()) throw std::invalid_argument("encode_matrix: non-finite entries");
    const std::size_t wr = layout.registers()[0].width;
    const std::size_t wc = layout.registers()[1].width;
    StateVector circuit = detail::encoding_circuit(detail::flatten_padded(x, wr, wc), layout);
    PostSelection ps = postselect(circuit, "_enc_flag", "1");
    StateVector state = drop_register(drop_register(ps.collapsed, "_enc_flag"), "_enc_work");
    return EncodingResult{std::move(state), ps.probability, x.frobenius_norm()};
}

/// Finite-shot emulation of the preparation measurement: samples the flag
/// qubit of the encoding circuit and returns how many shots landed on |1⟩.
inline std::uint64_t encoding_success_count(const RealVector& v, const QubitRegisterLayout& layout,
                                            std::size_t shots, std::uint64_t seed) {
    if (layout.registers().size() != 1)
        throw std::invalid_argument("encoding_success_count expects a single-register layout");
    const std::size_t w = layout.registers().front().width;
    StateVector circuit = detail::encoding_circuit(detail::flatten_padded(v, w), layout);
    const auto histogram = sample(circuit, "_enc_flag", shots, seed);
    const auto it = histogram.find("1");
    return it == histogram.end() ? 0 : it->second;
}

/// e^{iρt₀}, either exactly (spectral) or as the product of Q partial-swap
/// slices. Eigenvalues must satisfy λ·t₀ < 2π (no phase wraparound).
inline DensityExponentialResult density_exponential(const DensityMatrix& rho, double t0,
                                                    const PhaseEstimationConfig& cfg) {
    if (t0 < 0.0) throw std::invalid_argument("density_exponential: negative evolution time");
    const HermitianEigensystem es = hermitian_eigensystem(rho.entries());
    if (es.eigenvalues.back() * t0 >= 2.0 * kPi - 1e-12)
        throw std::runtime_error("density_exponential: eigenphase wraparound");

    const std::size_t d = rho.dimension();
    ComplexMatrix exact(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const cdouble fk = std::polar(1.0, es.eigenvalues[k] * t0);
        for (std::size_t i = 0; i < d; ++i) {
            const cdouble vik = es.vectors(i, k);
            if (vik == cdouble(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < d; ++j) exact(i, j) += fk * vik * std::conj(es.vectors(j, k));
        }
    }
    if (cfg.exact_unitary || t0 == 0.0) return DensityExponentialResult{std::move(exact), std::nullopt};

    // One slice: the partial-swap interaction with a fresh copy of the
    // state's purification, compressed onto the copy subspace.
    const double dt = t0 / static_cast<double>(cfg.lmr_steps);
    ComplexMatrix slice(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            slice(i, j) = cdouble(0.0, std::sin(dt)) * rho.entries()(i, j);
        slice(i, i) += std::cos(dt);
    }
    ComplexMatrix sliced = matrix_power(slice, cfg.lmr_steps);
    const double err = operator_norm(sliced - exact);
    return DensityExponentialResult{std::move(sliced), err};
}

/// Textbook phase estimation: uniform clock, clock-conditioned powers
/// U^{2^k}, inverse QFT. The clock register must be |0…0⟩ on entry; on exit
/// eigencomponents of the target carry their t-bit eigenphase in the clock.
inline StateVector phase_estimation(const StateVector& state, const ComplexMatrix& u,
                                    const std::string& target_register,
                                    const std::string& clock_register,
                                    const PhaseEstimationConfig& cfg) {
    cfg.validate();
    const auto& layout = state.layout();
    const std::size_t t = layout.width(clock_register);
    if (t != cfg.precision_bits)
        throw std::invalid_argument("phase_estimation: clock width does not match precision_bits");
    if (u.rows() != (1ULL << layout.width(target_register)))
        throw std::invalid_argument("phase_estimation: unitary does not match target register");
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("phase_estimation: matrix is not unitary");

    const std::uint64_t clock_mask = layout.mask(clock_register);
    for (std::uint64_t s = 0; s < state.dimension(); ++s) {
        if ((s & clock_mask) != 0 && std::abs(state.amplitude(s)) > 1e-10)
            throw std::runtime_error("phase_estimation: clock register is dirty");
    }

    const std::size_t n = state.qubit_count();
    std::vector<cdouble> amps = state.amplitudes();
    const std::vector<std::size_t> clock_shifts = detail::register_shifts(layout, clock_register);
    const std::vector<std::size_t> target_shifts = detail::register_shifts(layout, target_register);

    for (std::size_t sh : clock_shifts) detail::apply_hadamard(amps, n, sh);
    ComplexMatrix power = u;
    for (std::size_t k = 0; k < t; ++k) {
        // Clock qubit with weight 2^k controls U^{2^k}.
        detail::apply_controlled_dense(amps, n, power, clock_shifts[t - 1 - k], target_shifts);
        if (k + 1 < t) power = power * power;
    }
    detail::apply_qft_circuit(amps, n, clock_shifts, /*inverse=*/true);
    return StateVector(layout, std::move(amps));
}

/// Rotates a one-qubit ancilla conditioned on the clock register, with the
/// requested amplitude profile (inverse shift or filter).
inline StateVector eigen_rotation(const StateVector& state, const std::string& clock_register,
                                  const std::string& ancilla_register, const EigenRotationSpec& spec) {
    const auto& layout = state.layout();
    const std::size_t t = layout.width(clock_register);
    if (t != spec.precision_bits)
        throw std::invalid_argument("eigen_rotation: clock width does not match precision_bits");
    if (layout.width(ancilla_register) != 1)
        throw std::invalid_argument("eigen_rotation: ancilla register must be one qubit");
    if (!(spec.alpha >= 0.0) || !(spec.constant >= 0.0))
        throw std::invalid_argument("eigen_rotation: alpha and constant must be >= 0");

    const std::uint64_t anc_mask = layout.mask(ancilla_register);
    for (std::uint64_t s = 0; s < state.dimension(); ++s) {
        if ((s & anc_mask) != 0 && std::abs(state.amplitude(s)) > 1e-10)
            throw std::runtime_error("eigen_rotation: ancilla is not in |0>");
    }

    std::vector<double> table(1ULL << t);
    for (std::uint64_t c = 0; c < table.size(); ++c)
        table[c] = spec.amplitude(spec.decode_eigenvalue(c));

    std::vector<cdouble> amps = state.amplitudes();
    detail::apply_multiplexed_rotation(amps, layout.shift(clock_register), t,
                                       layout.shift(ancilla_register), table);
    return StateVector(layout, std::move(amps));
}

/// Undoes phase_estimation (run before any rotation or after one), projects
/// the clock back onto |0…0⟩ and removes it from the layout. The residual
/// off-branch mass is reported; it exceeds zero only for spectra that are
/// not exactly representable in t bits.
inline InversePhaseEstimationResult inverse_phase_estimation(const StateVector& state,
                                                             const ComplexMatrix& u,
                                                             const std::string& target_register,
                                                             const std::string& clock_register,
                                                             const PhaseEstimationConfig& cfg,
                                                             double residual_tolerance = 1.0) {
    cfg.validate();
    const auto& layout = state.layout();
    const std::size_t t = layout.width(clock_register);
    if (t != cfg.precision_bits)
        throw std::invalid_argument("inverse_phase_estimation: clock width does not match precision_bits");
    if (!is_unitary(u, 1e-10))
        throw std::invalid_argument("inverse_phase_estimation: matrix is not unitary");

    const std::size_t n = state.qubit_count();
    std::vector<cdouble> amps = state.amplitudes();
    const std::vector<std::size_t> clock_shifts = detail::register_shifts(layout, clock_register);
    const std::vector<std::size_t> target_shifts = detail::register_shifts(layout, target_register);

    detail::apply_qft_circuit(amps, n, clock_shifts, /*inverse=*/false);
    ComplexMatrix power = u.adjoint();
    for (std::size_t k = 0; k < t; ++k) {
        detail::apply_controlled_dense(amps, n, power, clock_shifts[t - 1 - k], target_shifts);
        if (k + 1 < t) power = power * power;
    }
    for (std::size_t sh : clock_shifts) detail::apply_hadamard(amps, n, sh);

    StateVector undone(layout, std::move(amps));
    const std::uint64_t clock_mask = layout.mask(clock_register);
    double on_zero = 0.0;
    for (std::uint64_t s = 0; s < undone.dimension(); ++s) {
        if ((s & clock_mask) == 0) on_zero += std::norm(undone.amplitude(s));
    }
    const double residual = std::max(0.0, 1.0 - on_zero);
    if (residual > residual_tolerance)
        throw std::runtime_error("inverse_phase_estimation: residual clock entanglement " +
                                 std::to_string(residual));

    PostSelection ps = postselect(undone, clock_register, std::string(t, '0'));
    return InversePhaseEstimationResult{drop_register(ps.collapsed, clock_register), residual};
}

/// Sign-revealing swap test. Entangles a preparation qubit with the two
/// payload states, (|0⟩|a⟩ + |1⟩|b⟩)/√2, then runs a swap test between that
/// qubit and a reference qubit in (|0⟩−|1⟩)/√2. The test ancilla reads |1⟩
/// with probability Pr = 1/4 + Re⟨a|b⟩/4, so 4·Pr − 1 estimates ⟨a|b⟩ with
/// its sign. shots = 0 returns the analytic value.
inline SwapTestResult signed_swap_test(const StateVector& a, const StateVector& b, std::size_t shots,
                                       std::uint64_t seed) {
    if (!(a.layout() == b.layout())) throw std::invalid_argument("signed_swap_test: layout mismatch");

    std::vector<QubitRegister> regs{{"_st_test", 1}, {"_st_prep", 1}, {"_st_ref", 1}};
    for (const auto& r : a.layout().registers()) regs.push_back(r);
    QubitRegisterLayout layout(std::move(regs), a.layout().max_qubits());

    const std::uint64_t d = a.dimension();
    const std::size_t n = layout.qubit_count();
    std::vector<cdouble> amps(layout.dimension(), cdouble(0.0, 0.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::uint64_t prep_bit = 1ULL << layout.shift("_st_prep");
    for (std::uint64_t i = 0; i < d; ++i) {
        amps[i] = a.amplitude(i) * inv_sqrt2;             // |0⟩_prep |a⟩
        amps[i | prep_bit] = b.amplitude(i) * inv_sqrt2;  // |1⟩_prep |b⟩
    }

    const std::size_t test_shift = layout.shift("_st_test");
    const std::size_t prep_shift = layout.shift("_st_prep");
    const std::size_t ref_shift = layout.shift("_st_ref");
    detail::apply_pauli_x(amps, n, ref_shift);
    detail::apply_hadamard(amps, n, ref_shift);  // reference qubit to (|0⟩−|1⟩)/√2
    detail::apply_hadamard(amps, n, test_shift);
    detail::apply_controlled_swap_bits(amps, test_shift, prep_shift, ref_shift);
    detail::apply_hadamard(amps, n, test_shift);

    StateVector final_state(layout, std::move(amps));
    double pr = 0.0;
    const std::uint64_t test_bit = 1ULL << test_shift;
    for (std::uint64_t s = 0; s < final_state.dimension(); ++s) {
        if (s & test_bit) pr += std::norm(final_state.amplitude(s));
    }

    if (shots == 0) return SwapTestResult{4.0 * pr - 1.0, pr, 0};
    const auto histogram = sample(final_state, "_st_test", shots, seed);
    const auto it = histogram.find("1");
    const double freq = it == histogram.end()
                            ? 0.0
                            : static_cast<double>(it->second) / static_cast<double>(shots);
    return SwapTestResult{4.0 * freq - 1.0, pr, shots};
}

/// Plain swap test between two payload copies; the ancilla reads |0⟩ with
/// probability 1/2 + |⟨a|b⟩|²/2, so 2·Pr − 1 estimates |⟨a|b⟩|² (sign lost).
inline SwapTestResult plain_swap_test(const StateVector& a, const StateVector& b, std::size_t shots,
                                      std::uint64_t seed) {
    if (!(a.layout() == b.layout())) throw std::invalid_argument("plain_swap_test: layout mismatch");

    std::vector<QubitRegister> regs{{"_st_test", 1}};
    for (const auto& r : a.layout().registers()) regs.push_back(r);
    for (const auto& r : b.layout().registers()) regs.push_back({r.name + "_copy", r.width});
    QubitRegisterLayout layout(std::move(regs), a.layout().max_qubits());

    const std::uint64_t d = a.dimension();
    const std::size_t n = layout.qubit_count();
    std::vector<cdouble> amps(layout.dimension(), cdouble(0.0, 0.0));
    for (std::uint64_t i = 0; i < d; ++i) {
        const cdouble ai = a.amplitude(i);
        if (ai == cdouble(0.0, 0.0)) continue;
        for (std::uint64_t j = 0; j < d; ++j) amps[(i << a.qubit_count()) | j] = ai * b.amplitude(j);
    }

    const std::size_t test_shift = layout.shift("_st_test");
    detail::apply_hadamard(amps, n, test_shift);
    const std::size_t payload = a.qubit_count();
    for (std::size_t q = 0; q < payload; ++q) {
        const std::size_t sa = n - 1 - (1 + q);            // qubit q of the first copy
        const std::size_t sb = n - 1 - (1 + payload + q);  // matching qubit of the second copy
        detail::apply_controlled_swap_bits(amps, test_shift, sa, sb);
    }
    detail::apply_hadamard(amps, n, test_shift);

    StateVector final_state(layout, std::move(amps));
    double pr = 0.0;
    const std::uint64_t test_bit = 1ULL << test_shift;
    for (std::uint64_t s = 0; s < final_state.dimension(); ++s) {
        if (!(s & test_bit)) pr += std::norm(final_state.amplitude(s));
    }

    if (shots == 0) return SwapTestResult{2.0 * pr - 1.0, pr, 0};
    const auto histogram = sample(final_state, "_st_test", shots, seed);
    const auto it = histogram.find("0");
    const double freq = it == histogram.end()
                            ? 0.0
                            : static_cast<double>(it->second) / static_cast<double>(shots);
    return SwapTestResult{2.0 * freq - 1.0, pr, shots};
}

}  // namespace qridge
