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
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qridge {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Hard ceiling on simulated qubits (256 MiB of amplitudes at double precision).
inline constexpr std::size_t kDefaultMaxQubits = 24;

inline std::size_t ceil_log2(std::size_t n) {
    std::size_t bits = 0;
    std::size_t cap = 1;
    while (cap < n) {
        cap <<= 1;
        ++bits;
    }
    return bits;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Renders `value` as a big-endian bitstring of the given width ("101" for 5).
inline std::string value_to_bitstring(std::uint64_t value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1ULL) out[i] = '1';
    }
    return out;
}

inline std::uint64_t bitstring_to_value(const std::string& bits) {
    std::uint64_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("malformed bitstring: " + bits);
        value = (value << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return value;
}

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace qridge
