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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qridge/linalg.hpp"

namespace qridge {

/// A loaded training set: features X (one row per observation) and targets y.
struct Dataset {
    RealMatrix x;
    RealVector y;
    std::vector<std::string> feature_names;
    double y_norm = 0.0;
    std::vector<double> row_norms;  // per-row feature norms, kept for rescaling
    std::string source;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

inline double parse_cell(const std::string& cell, std::size_t line_no, std::size_t column,
                         const std::string& column_name) {
    const auto fail = [&](const std::string& what) {
        throw std::invalid_argument("csv parse error at line " + std::to_string(line_no) + ", column " +
                                    std::to_string(column + 1) + " ('" + column_name + "'): " + what +
                                    " '" + cell + "'");
    };
    if (cell.empty()) fail("missing value");
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) fail("invalid numeric value");
    if (!std::isfinite(value)) fail("non-finite value");
    return value;
}

}  // namespace detail

/// Loads a CSV training set: a header row whose last column must be named
/// "y", remaining columns are features, decimal floats, LF or CRLF endings.
inline Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::vector<std::string> lines;
    std::string line;
    std::stringstream ss(content);
    while (std::getline(ss, line)) {
        if (!detail::trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("empty dataset file: " + path);

    const std::vector<std::string> header = detail::split_csv_line(lines.front());
    if (header.size() < 2)
        throw std::invalid_argument("csv header needs at least one feature column and 'y'");
    if (header.back() != "y")
        throw std::invalid_argument("csv header must end with a column named 'y'");
    for (std::size_t c = 0; c + 1 < header.size(); ++c) {
        if (header[c].empty()) throw std::invalid_argument("csv header has an unnamed feature column");
    }

    const std::size_t n_features = header.size() - 1;
    const std::size_t n_rows = lines.size() - 1;
    if (n_rows == 0) throw std::invalid_argument("csv has a header but no data rows");

    Dataset ds;
    ds.source = path;
    ds.feature_names.assign(header.begin(), header.end() - 1);
    ds.x = RealMatrix(n_rows, n_features);
    ds.y.resize(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t line_no = r + 2;  // 1-based, header is line 1
        const std::vector<std::string> cells = detail::split_csv_line(lines[r + 1]);
        if (cells.size() != header.size())
            throw std::invalid_argument("csv row at line " + std::to_string(line_no) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(header.size()));
        for (std::size_t c = 0; c < n_features; ++c)
            ds.x(r, c) = detail::parse_cell(cells[c], line_no, c, header[c]);
        ds.y[r] = detail::parse_cell(cells.back(), line_no, n_features, "y");
    }

    ds.y_norm = norm(ds.y);
    ds.row_norms.resize(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) ds.row_norms[r] = norm(ds.x.row(r));
    return ds;
}

/// Centers and scales each feature to zero mean and unit (population)
/// standard deviation. Targets are left untouched.
inline Dataset standardized(const Dataset& ds) {
    Dataset out = ds;
    const std::size_t m = ds.x.rows();
    for (std::size_t c = 0; c < ds.x.cols(); ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < m; ++r) mean += ds.x(r, c);
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            const double d = ds.x(r, c) - mean;
            var += d * d;
        }
        var /= static_cast<double>(m);
        const double sd = std::sqrt(var);
        if (!(sd > 0.0))
            throw std::invalid_argument("cannot standardize constant feature '" + ds.feature_names[c] + "'");
        for (std::size_t r = 0; r < m; ++r) out.x(r, c) = (ds.x(r, c) - mean) / sd;
    }
    for (std::size_t r = 0; r < m; ++r) out.row_norms[r] = norm(out.x.row(r));
    return out;
}

/// Applies the dataset's standardization transform to a new input row.
inline RealVector standardize_like(const Dataset& raw, const RealVector& x_new) {
    if (x_new.size() != raw.x.cols()) throw std::invalid_argument("x_new length mismatch");
    const std::size_t m = raw.x.rows();
    RealVector out(x_new.size());
    for (std::size_t c = 0; c < x_new.size(); ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < m; ++r) mean += raw.x(r, c);
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            const double d = raw.x(r, c) - mean;
            var += d * d;
        }
        var /= static_cast<double>(m);
        const double sd = std::sqrt(var);
        if (!(sd > 0.0))
            throw std::invalid_argument("cannot standardize constant feature '" + raw.feature_names[c] + "'");
        out[c] = (x_new[c] - mean) / sd;
    }
    return out;
}

}  // namespace qridge
