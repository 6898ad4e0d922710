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
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace qridge {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

namespace detail {

/// %.17g is round-trip exact for doubles and, with the C locale, renders
/// identically on every run, which is what the byte-identical report
/// contract needs.
inline std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("report numbers must be finite");
    if (v == 0.0) return "0";  // collapse -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

inline void append_json(std::string& out, const nlohmann::json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: keys sorted
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                append_escaped(out, it.key());
                out += ": ";
                append_json(out, it.value(), depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                append_json(out, item, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::json::value_t::string: append_escaped(out, j.get<std::string>()); return;
        case nlohmann::json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
        case nlohmann::json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            return;
        case nlohmann::json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            return;
        case nlohmann::json::value_t::number_float: out += format_double(j.get<double>()); return;
        case nlohmann::json::value_t::null: out += "null"; return;
        default: throw std::invalid_argument("unsupported report value type");
    }
}

}  // namespace detail

/// Deterministic serialization: sorted keys, two-space indent, LF endings,
/// floats at 17 significant digits. Identical documents yield identical bytes.
inline std::string serialize_report(const nlohmann::json& document) {
    std::string out;
    detail::append_json(out, document, 0);
    out += "\n";
    return out;
}

inline void write_report_file(const nlohmann::json& document, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open report file for writing: " + path);
    const std::string text = serialize_report(document);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing report file: " + path);
}

inline nlohmann::json parse_report_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open report file: " + path);
    return nlohmann::json::parse(in);
}

}  // namespace qridge
