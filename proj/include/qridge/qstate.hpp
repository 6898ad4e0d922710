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
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qridge/common.hpp"
#include "qridge/complex_matrix.hpp"
#include "qridge/rng.hpp"

namespace qridge {

/// A named block of qubits inside a layout.
struct QubitRegister {
    std::string name;
    std::size_t width = 0;

    friend bool operator==(const QubitRegister&, const QubitRegister&) = default;
};

/// Ordered set of named qubit registers. The basis index of the composite
/// system is the concatenation of per-register values in declared order:
/// the first register occupies the most significant bits, and within a
/// register the first qubit is the most significant bit.
class QubitRegisterLayout {
  public:
    QubitRegisterLayout() = default;

    explicit QubitRegisterLayout(std::vector<QubitRegister> regs,
                                 std::size_t max_qubits = kDefaultMaxQubits)
        : regs_(std::move(regs)), max_qubits_(max_qubits) {
        for (std::size_t i = 0; i < regs_.size(); ++i) {
            if (regs_[i].name.empty()) throw std::invalid_argument("register name must be nonempty");
            if (regs_[i].width == 0) throw std::invalid_argument("register width must be positive");
            for (std::size_t j = 0; j < i; ++j) {
                if (regs_[j].name == regs_[i].name)
                    throw std::invalid_argument("duplicate register name: " + regs_[i].name);
            }
            total_ += regs_[i].width;
        }
        if (total_ == 0) throw std::invalid_argument("layout must contain at least one qubit");
        if (total_ > max_qubits_)
            throw std::invalid_argument("layout exceeds qubit budget of " + std::to_string(max_qubits_));
    }

    std::size_t qubit_count() const { return total_; }
    std::uint64_t dimension() const { return 1ULL << total_; }
    std::size_t max_qubits() const { return max_qubits_; }
    const std::vector<QubitRegister>& registers() const { return regs_; }

    bool has(std::string_view name) const {
        for (const auto& r : regs_) {
            if (r.name == name) return true;
        }
        return false;
    }

    /// Qubit offset of the register's first (most significant) qubit.
    std::size_t offset(std::string_view name) const {
        std::size_t off = 0;
        for (const auto& r : regs_) {
            if (r.name == name) return off;
            off += r.width;
        }
        throw std::invalid_argument("unknown register: " + std::string(name));
    }

    std::size_t width(std::string_view name) const {
        for (const auto& r : regs_) {
            if (r.name == name) return r.width;
        }
        throw std::invalid_argument("unknown register: " + std::string(name));
    }

    /// Bit shift of the register's least significant bit inside a basis index.
    std::size_t shift(std::string_view name) const { return total_ - offset(name) - width(name); }

    std::uint64_t mask(std::string_view name) const {
        return ((1ULL << width(name)) - 1ULL) << shift(name);
    }

    /// Value carried by the named register in the given basis index.
    std::uint64_t value(std::uint64_t basis_index, std::string_view name) const {
        return (basis_index >> shift(name)) & ((1ULL << width(name)) - 1ULL);
    }

    /// Global qubit ids (MSB-first) of the named register.
    std::vector<std::size_t> qubits(std::string_view name) const {
        const std::size_t off = offset(name);
        std::vector<std::size_t> out(width(name));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = off + i;
        return out;
    }

    QubitRegisterLayout without(std::string_view name) const {
        std::vector<QubitRegister> regs;
        bool found = false;
        for (const auto& r : regs_) {
            if (r.name == name) {
                found = true;
            } else {
                regs.push_back(r);
            }
        }
        if (!found) throw std::invalid_argument("unknown register: " + std::string(name));
        return QubitRegisterLayout(std::move(regs), max_qubits_);
    }

    QubitRegisterLayout concatenated(const QubitRegisterLayout& other) const {
        std::vector<QubitRegister> regs = regs_;
        for (const auto& r : other.regs_) {
            if (has(r.name)) throw std::invalid_argument("register name collision: " + r.name);
            regs.push_back(r);
        }
        return QubitRegisterLayout(std::move(regs), std::max(max_qubits_, other.max_qubits_));
    }

    friend bool operator==(const QubitRegisterLayout& a, const QubitRegisterLayout& b) {
        return a.regs_ == b.regs_;
    }

  private:
    std::vector<QubitRegister> regs_;
    std::size_t total_ = 0;
    std::size_t max_qubits_ = kDefaultMaxQubits;
};

namespace detail {

/// Shift (LSB bit position) of a global qubit id.
inline std::size_t qubit_shift(std::size_t total_qubits, std::size_t qubit) {
    return total_qubits - 1 - qubit;
}

/// Inserts zero bits at the given (ascending) bit positions of a compact index.
inline std::uint64_t expand_index(std::uint64_t compact, const std::vector<std::size_t>& ascending_shifts) {
    std::uint64_t s = compact;
    for (std::size_t p : ascending_shifts) {
        s = ((s >> p) << (p + 1)) | (s & ((1ULL << p) - 1ULL));
    }
    return s;
}

/// Applies a dense d x d matrix to the subspace spanned by the listed qubit
/// shifts (local MSB first). The matrix need not be unitary here; callers
/// enforce their own contracts.
inline void apply_dense(std::vector<cdouble>& amps, std::size_t n_qubits, const ComplexMatrix& u,
                        const std::vector<std::size_t>& shifts) {
    const std::size_t k = shifts.size();
    const std::uint64_t d = 1ULL << k;
    if (u.rows() != d || u.cols() != d) throw std::invalid_argument("apply_dense: dimension mismatch");

    std::vector<std::uint64_t> pattern(d, 0);
    for (std::uint64_t l = 0; l < d; ++l) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((l >> (k - 1 - j)) & 1ULL) pattern[l] |= 1ULL << shifts[j];
        }
    }
    std::vector<std::size_t> ascending = shifts;
    std::sort(ascending.begin(), ascending.end());

    const std::uint64_t outer = 1ULL << (n_qubits - k);
    std::vector<cdouble> x(d), y(d);
    for (std::uint64_t r = 0; r < outer; ++r) {
        const std::uint64_t base = expand_index(r, ascending);
        for (std::uint64_t l = 0; l < d; ++l) x[l] = amps[base | pattern[l]];
        for (std::uint64_t i = 0; i < d; ++i) {
            cdouble s(0.0, 0.0);
            for (std::uint64_t j = 0; j < d; ++j) s += u(i, j) * x[j];
            y[i] = s;
        }
        for (std::uint64_t l = 0; l < d; ++l) amps[base | pattern[l]] = y[l];
    }
}

/// Controlled application of a dense matrix: identity on the control-0 branch.
inline void apply_controlled_dense(std::vector<cdouble>& amps, std::size_t n_qubits,
                                   const ComplexMatrix& u, std::size_t control_shift,
                                   const std::vector<std::size_t>& target_shifts) {
    const std::size_t k = target_shifts.size();
    const std::uint64_t d = 1ULL << k;
    if (u.rows() != d || u.cols() != d)
        throw std::invalid_argument("apply_controlled_dense: dimension mismatch");

    std::vector<std::uint64_t> pattern(d, 0);
    for (std::uint64_t l = 0; l < d; ++l) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((l >> (k - 1 - j)) & 1ULL) pattern[l] |= 1ULL << target_shifts[j];
        }
    }
    std::vector<std::size_t> ascending = target_shifts;
    ascending.push_back(control_shift);
    std::sort(ascending.begin(), ascending.end());

    const std::uint64_t control_bit = 1ULL << control_shift;
    const std::uint64_t outer = 1ULL << (n_qubits - k - 1);
    std::vector<cdouble> x(d), y(d);
    for (std::uint64_t r = 0; r < outer; ++r) {
        const std::uint64_t base = expand_index(r, ascending) | control_bit;
        for (std::uint64_t l = 0; l < d; ++l) x[l] = amps[base | pattern[l]];
        for (std::uint64_t i = 0; i < d; ++i) {
            cdouble s(0.0, 0.0);
            for (std::uint64_t j = 0; j < d; ++j) s += u(i, j) * x[j];
            y[i] = s;
        }
        for (std::uint64_t l = 0; l < d; ++l) amps[base | pattern[l]] = y[l];
    }
}

inline void apply_hadamard(std::vector<cdouble>& amps, std::size_t n_qubits, std::size_t shift) {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::uint64_t bit = 1ULL << shift;
    const std::uint64_t outer = 1ULL << (n_qubits - 1);
    const std::vector<std::size_t> at{shift};
    for (std::uint64_t r = 0; r < outer; ++r) {
        const std::uint64_t i0 = expand_index(r, at);
        const std::uint64_t i1 = i0 | bit;
        const cdouble a = amps[i0], b = amps[i1];
        amps[i0] = (a + b) * inv_sqrt2;
        amps[i1] = (a - b) * inv_sqrt2;
    }
}

inline void apply_pauli_x(std::vector<cdouble>& amps, std::size_t n_qubits, std::size_t shift) {
    const std::uint64_t bit = 1ULL << shift;
    const std::uint64_t outer = 1ULL << (n_qubits - 1);
    const std::vector<std::size_t> at{shift};
    for (std::uint64_t r = 0; r < outer; ++r) {
        const std::uint64_t i0 = expand_index(r, at);
        std::swap(amps[i0], amps[i0 | bit]);
    }
}

inline void apply_controlled_phase(std::vector<cdouble>& amps, std::size_t shift_a, std::size_t shift_b,
                                   double angle) {
    const cdouble phase = std::polar(1.0, angle);
    const std::uint64_t m = (1ULL << shift_a) | (1ULL << shift_b);
    for (std::uint64_t s = 0; s < amps.size(); ++s) {
        if ((s & m) == m) amps[s] *= phase;
    }
}

inline void apply_swap_bits(std::vector<cdouble>& amps, std::size_t shift_a, std::size_t shift_b) {
    const std::uint64_t ba = 1ULL << shift_a;
    const std::uint64_t bb = 1ULL << shift_b;
    for (std::uint64_t s = 0; s < amps.size(); ++s) {
        if ((s & ba) && !(s & bb)) std::swap(amps[s], amps[s ^ ba ^ bb]);
    }
}

inline void apply_controlled_swap_bits(std::vector<cdouble>& amps, std::size_t control_shift,
                                       std::size_t shift_a, std::size_t shift_b) {
    const std::uint64_t bc = 1ULL << control_shift;
    const std::uint64_t ba = 1ULL << shift_a;
    const std::uint64_t bb = 1ULL << shift_b;
    for (std::uint64_t s = 0; s < amps.size(); ++s) {
        if ((s & bc) && (s & ba) && !(s & bb)) std::swap(amps[s], amps[s ^ ba ^ bb]);
    }
}

/// |i⟩_src |x⟩_dst → |i⟩_src |x ⊕ i⟩_dst for equal-width register blocks.
/// Self-inverse; used as the reversible data-lookup oracle and its uncompute.
inline void apply_xor_copy(std::vector<cdouble>& amps, std::size_t src_shift, std::size_t dst_shift,
                           std::size_t width) {
    const std::uint64_t mask = (1ULL << width) - 1ULL;
    std::vector<cdouble> out(amps.size());
    for (std::uint64_t s = 0; s < amps.size(); ++s) {
        const std::uint64_t v = (s >> src_shift) & mask;
        out[s ^ (v << dst_shift)] = amps[s];
    }
    amps.swap(out);
}

/// Multiplexed Y-rotation of a single target qubit: for selector value v the
/// target transforms as |0⟩ → √(1−f²)|0⟩ + f|1⟩, |1⟩ → −f|0⟩ + √(1−f²)|1⟩
/// with f = table[v] ∈ [−1, 1].
inline void apply_multiplexed_rotation(std::vector<cdouble>& amps, std::size_t selector_shift,
                                       std::size_t selector_width, std::size_t target_shift,
                                       const std::vector<double>& table) {
    const std::uint64_t mask = (1ULL << selector_width) - 1ULL;
    const std::uint64_t bit = 1ULL << target_shift;
    for (std::uint64_t s = 0; s < amps.size(); ++s) {
        if (s & bit) continue;
        const double f = table[(s >> selector_shift) & mask];
        const double g = std::sqrt(std::max(0.0, 1.0 - f * f));
        const cdouble a0 = amps[s], a1 = amps[s | bit];
        amps[s] = g * a0 - f * a1;
        amps[s | bit] = f * a0 + g * a1;
    }
}

}  // namespace detail

/// Immutable normalized pure state over a register layout.
class StateVector {
  public:
    StateVector(QubitRegisterLayout layout, std::vector<cdouble> amplitudes, bool renormalize = false)
        : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
        if (amps_.size() != layout_.dimension())
            throw std::invalid_argument("amplitude count does not match layout dimension");
        double n2 = 0.0;
        for (const cdouble& a : amps_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw std::invalid_argument("non-finite amplitude");
            n2 += std::norm(a);
        }
        if (n2 < 1e-24) throw std::invalid_argument("zero state vector");
        if (renormalize) {
            const double inv = 1.0 / std::sqrt(n2);
            for (cdouble& a : amps_) a *= inv;
        } else if (std::abs(n2 - 1.0) > 1e-9) {
            throw std::invalid_argument("state vector is not normalized");
        }
    }

    static StateVector zero_state(QubitRegisterLayout layout) {
        std::vector<cdouble> amps(layout.dimension(), cdouble(0.0, 0.0));
        amps[0] = 1.0;
        return StateVector(std::move(layout), std::move(amps));
    }

    static StateVector basis_state(QubitRegisterLayout layout, std::uint64_t index) {
        std::vector<cdouble> amps(layout.dimension(), cdouble(0.0, 0.0));
        if (index >= amps.size()) throw std::invalid_argument("basis index out of range");
        amps[index] = 1.0;
        return StateVector(std::move(layout), std::move(amps));
    }

    const QubitRegisterLayout& layout() const { return layout_; }
    const std::vector<cdouble>& amplitudes() const { return amps_; }
    cdouble amplitude(std::uint64_t i) const { return amps_[i]; }
    std::size_t qubit_count() const { return layout_.qubit_count(); }
    std::uint64_t dimension() const { return layout_.dimension(); }

    double norm() const {
        double n2 = 0.0;
        for (const cdouble& a : amps_) n2 += std::norm(a);
        return std::sqrt(n2);
    }

  private:
    QubitRegisterLayout layout_;
    std::vector<cdouble> amps_;
};

/// Builds a state from raw amplitudes, renormalizing exactly. Rejects zero
/// vectors and length mismatches.
inline StateVector make_state(QubitRegisterLayout layout, std::vector<cdouble> amplitudes) {
    return StateVector(std::move(layout), std::move(amplitudes), /*renormalize=*/true);
}

/// Mixed state over a single register's subspace.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols())
            throw std::invalid_argument("density matrix must be square");
        cdouble tr(0.0, 0.0);
        double herm_defect = 0.0;
        for (std::size_t i = 0; i < entries_.rows(); ++i) {
            tr += entries_(i, i);
            for (std::size_t j = 0; j <= i; ++j)
                herm_defect = std::max(herm_defect, std::abs(entries_(i, j) - std::conj(entries_(j, i))));
        }
        if (herm_defect > 1e-12) throw std::invalid_argument("density matrix is not Hermitian");
        if (std::abs(tr - cdouble(1.0)) > 1e-12) throw std::invalid_argument("density matrix trace is not 1");
    }

    static DensityMatrix diagonal(const RealVector& populations) {
        ComplexMatrix m(populations.size(), populations.size());
        for (std::size_t i = 0; i < populations.size(); ++i) m(i, i) = populations[i];
        return DensityMatrix(std::move(m));
    }

    std::size_t dimension() const { return entries_.rows(); }
    const ComplexMatrix& entries() const { return entries_; }

    RealVector eigenvalues() const { return hermitian_eigensystem(entries_).eigenvalues; }

    double min_eigenvalue() const { return eigenvalues().front(); }

    double purity() const {
        double p = 0.0;
        for (std::size_t i = 0; i < dimension(); ++i)
            for (std::size_t j = 0; j < dimension(); ++j) p += std::norm(entries_(i, j));
        return p;
    }

  private:
    ComplexMatrix entries_;
};

/// Outcome of an exact projective post-selection on one register.
struct PostSelection {
    std::string register_name;
    std::string outcome;
    double probability = 0.0;
    StateVector collapsed;
};

/// Kronecker product; a's registers stay most significant.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    QubitRegisterLayout layout = a.layout().concatenated(b.layout());
    const std::uint64_t db = b.dimension();
    std::vector<cdouble> amps(layout.dimension());
    for (std::uint64_t i = 0; i < a.dimension(); ++i) {
        const cdouble ai = a.amplitude(i);
        for (std::uint64_t j = 0; j < db; ++j) amps[i * db + j] = ai * b.amplitude(j);
    }
    return StateVector(std::move(layout), std::move(amps));
}

/// Applies a unitary to the ordered concatenation of the target registers
/// (first named register supplies the most significant local bits).
inline StateVector apply_unitary(const StateVector& state, const ComplexMatrix& u,
                                 const std::vector<std::string>& targets) {
    if (targets.empty()) throw std::invalid_argument("apply_unitary: no target registers");
    std::vector<std::size_t> shifts;
    for (const auto& name : targets) {
        for (std::size_t q : state.layout().qubits(name))
            shifts.push_back(detail::qubit_shift(state.qubit_count(), q));
    }
    if (shifts.size() > 20) throw std::invalid_argument("apply_unitary: target subspace too large");
    const std::uint64_t d = 1ULL << shifts.size();
    if (u.rows() != d || u.cols() != d)
        throw std::invalid_argument("apply_unitary: matrix does not match target dimension");
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("apply_unitary: matrix is not unitary");

    std::vector<cdouble> amps = state.amplitudes();
    detail::apply_dense(amps, state.qubit_count(), u, shifts);
    return StateVector(state.layout(), std::move(amps));
}

/// Reduced density operator of the named register (all others traced out).
inline DensityMatrix partial_trace(const StateVector& state, std::string_view keep) {
    const auto& layout = state.layout();
    const std::size_t w = layout.width(keep);
    const std::size_t shift = layout.shift(keep);
    const std::uint64_t d = 1ULL << w;
    const std::uint64_t reg_mask = (d - 1ULL) << shift;

    ComplexMatrix rho(d, d);
    const std::uint64_t dim = state.dimension();
    // Enumerate the traced-out configuration via the complement bits.
    for (std::uint64_t s = 0; s < dim; ++s) {
        if (s & reg_mask) continue;  // s ranges over kept-register = 0 patterns
        for (std::uint64_t a = 0; a < d; ++a) {
            const cdouble va = state.amplitude(s | (a << shift));
            if (va == cdouble(0.0, 0.0)) continue;
            for (std::uint64_t b = 0; b < d; ++b) {
                rho(a, b) += va * std::conj(state.amplitude(s | (b << shift)));
            }
        }
    }
    // Clean up the numerically tiny Hermiticity defects of summation order.
    for (std::uint64_t a = 0; a < d; ++a) {
        rho(a, a) = rho(a, a).real();
        for (std::uint64_t b = 0; b < a; ++b) {
            const cdouble avg = 0.5 * (rho(a, b) + std::conj(rho(b, a)));
            rho(a, b) = avg;
            rho(b, a) = std::conj(avg);
        }
    }
    return DensityMatrix(std::move(rho));
}

/// Exact post-selection of one register on a basis outcome. Deterministic:
/// the probability is the analytic branch mass, no sampling involved.
inline PostSelection postselect(const StateVector& state, const std::string& register_name,
                                const std::string& outcome) {
    const auto& layout = state.layout();
    const std::size_t w = layout.width(register_name);
    if (outcome.size() != w)
        throw std::invalid_argument("postselect: outcome width does not match register");
    const std::uint64_t want = bitstring_to_value(outcome);
    const std::size_t shift = layout.shift(register_name);
    const std::uint64_t mask = (1ULL << w) - 1ULL;

    double p = 0.0;
    for (std::uint64_t s = 0; s < state.dimension(); ++s) {
        if (((s >> shift) & mask) == want) p += std::norm(state.amplitude(s));
    }
    if (p < 1e-15) throw std::runtime_error("post-selection on null branch");

    const double inv = 1.0 / std::sqrt(p);
    std::vector<cdouble> amps(state.dimension(), cdouble(0.0, 0.0));
    for (std::uint64_t s = 0; s < state.dimension(); ++s) {
        if (((s >> shift) & mask) == want) amps[s] = state.amplitude(s) * inv;
    }
    return PostSelection{register_name, outcome, p, StateVector(layout, std::move(amps))};
}

/// Removes a register that is unentangled and in a definite basis state
/// (as after post-selection or an exact uncompute).
inline StateVector drop_register(const StateVector& state, const std::string& register_name) {
    const auto& layout = state.layout();
    const std::size_t w = layout.width(register_name);
    const std::size_t shift = layout.shift(register_name);
    const std::uint64_t mask = (1ULL << w) - 1ULL;
    const std::uint64_t d = 1ULL << w;

    std::vector<double> mass(d, 0.0);
    for (std::uint64_t s = 0; s < state.dimension(); ++s)
        mass[(s >> shift) & mask] += std::norm(state.amplitude(s));
    std::uint64_t definite = 0;
    for (std::uint64_t v = 1; v < d; ++v) {
        if (mass[v] > mass[definite]) definite = v;
    }
    if (1.0 - mass[definite] > 1e-12)
        throw std::runtime_error("drop_register: register '" + register_name + "' is still entangled");

    QubitRegisterLayout reduced = layout.without(register_name);
    std::vector<cdouble> amps(reduced.dimension());
    const std::uint64_t low = (1ULL << shift) - 1ULL;
    for (std::uint64_t t = 0; t < reduced.dimension(); ++t) {
        const std::uint64_t s = ((t & ~low) << w) | (definite << shift) | (t & low);
        amps[t] = state.amplitude(s);
    }
    return StateVector(std::move(reduced), std::move(amps), /*renormalize=*/true);
}

/// Seeded Born-rule sampling of one register's measurement outcomes.
/// Returns observed outcome bitstrings with counts.
inline std::map<std::string, std::uint64_t> sample(const StateVector& state,
                                                   const std::string& register_name, std::size_t shots,
                                                   std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("sample: shots must be >= 1");
    const auto& layout = state.layout();
    const std::size_t w = layout.width(register_name);
    const std::size_t shift = layout.shift(register_name);
    const std::uint64_t mask = (1ULL << w) - 1ULL;
    const std::uint64_t d = 1ULL << w;

    std::vector<double> cumulative(d, 0.0);
    for (std::uint64_t s = 0; s < state.dimension(); ++s)
        cumulative[(s >> shift) & mask] += std::norm(state.amplitude(s));
    for (std::uint64_t v = 1; v < d; ++v) cumulative[v] += cumulative[v - 1];

    Rng rng(seed);
    std::vector<std::uint64_t> counts(d, 0);
    for (std::size_t i = 0; i < shots; ++i) ++counts[rng.pick(cumulative)];

    std::map<std::string, std::uint64_t> histogram;
    for (std::uint64_t v = 0; v < d; ++v) {
        if (counts[v] > 0) histogram[value_to_bitstring(v, w)] = counts[v];
    }
    return histogram;
}

/// ⟨a|b⟩ for states over identical layouts.
inline cdouble inner_product(const StateVector& a, const StateVector& b) {
    if (!(a.layout() == b.layout())) throw std::invalid_argument("inner_product: layout mismatch");
    cdouble s(0.0, 0.0);
    for (std::uint64_t i = 0; i < a.dimension(); ++i) s += std::conj(a.amplitude(i)) * b.amplitude(i);
    return s;
}

}  // namespace qridge
