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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qridge/alpha.hpp"
#include "qridge/dataset.hpp"
#include "qridge/linalg.hpp"
#include "qridge/predict.hpp"
#include "qridge/qprimitives.hpp"
#include "qridge/report.hpp"

namespace qridge {

/// One flag per pipeline knob; validated before any quantum work starts.
struct RunConfig {
    std::size_t precision_bits = 10;
    std::size_t shots = 0;  // 0 = analytic measurements
    std::uint64_t seed = 0;
    double evolution_time = kDefaultEvolutionTime;
    bool exact = true;           // exact exponential vs sliced approximation
    std::size_t lmr_steps = 256;
    std::optional<double> c1;    // explicit rotation constant; auto when absent
    double c2 = 1.0;
    double lambda_cutoff = 1e-12;
    std::size_t qubit_budget = kDefaultMaxQubits;
    std::size_t jobs = 1;
    bool standardize = false;

    void validate() const {
        if (precision_bits < 1 || precision_bits > kMaxPrecisionBits)
            throw std::invalid_argument("--bits must lie in [1, 12]");
        if (!(evolution_time > 0.0) || !(evolution_time < 2.0 * kPi))
            throw std::invalid_argument("--t0 must lie in (0, 2pi)");
        if (lmr_steps < 1) throw std::invalid_argument("--lmr-steps must be >= 1");
        if (qubit_budget < 4 || qubit_budget > kDefaultMaxQubits)
            throw std::invalid_argument("--qubit-budget must lie in [4, 24]");
        if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
        if (!(c2 > 0.0)) throw std::invalid_argument("--c2 must be positive");
        if (c1 && !(*c1 > 0.0)) throw std::invalid_argument("--c1 must be positive");
        if (!(lambda_cutoff >= 0.0 && lambda_cutoff < 1.0))
            throw std::invalid_argument("--lambda-cutoff must lie in [0, 1)");
    }

    PhaseEstimationConfig pe_config() const {
        PhaseEstimationConfig pe;
        pe.precision_bits = precision_bits;
        pe.evolution_time = evolution_time;
        pe.exact_unitary = exact;
        pe.lmr_steps = lmr_steps;
        return pe;
    }

    PredictConfig predict_config() const {
        PredictConfig cfg;
        cfg.pe = pe_config();
        cfg.c1_policy = c1 ? ConstantPolicy::kExplicit : ConstantPolicy::kAuto;
        cfg.c1_value = c1.value_or(0.0);
        cfg.swap_test_shots = shots;
        cfg.seed = seed;
        cfg.lambda_cutoff = lambda_cutoff;
        cfg.max_qubits = qubit_budget;
        return cfg;
    }

    TuneConfig tune_config() const {
        TuneConfig cfg;
        cfg.pe = pe_config();
        cfg.c2 = c2;
        cfg.swap_test_shots = shots;
        cfg.seed = seed;
        cfg.lambda_cutoff = lambda_cutoff;
        cfg.max_qubits = qubit_budget;
        cfg.jobs = jobs;
        return cfg;
    }

    /// Analytic-mode accuracy budget for the normalized prediction.
    double error_bound(double condition_number) const {
        return 5.0 * condition_number * condition_number /
               static_cast<double>(1ULL << precision_bits);
    }

    nlohmann::json echo() const {
        nlohmann::json j;
        j["bits"] = static_cast<std::int64_t>(precision_bits);
        j["shots"] = static_cast<std::int64_t>(shots);
        j["seed"] = seed;
        j["t0"] = evolution_time;
        j["exact"] = exact;
        j["lmr_steps"] = static_cast<std::int64_t>(lmr_steps);
        j["c1"] = c1 ? nlohmann::json(*c1) : nlohmann::json(nullptr);
        j["c2"] = c2;
        j["lambda_cutoff"] = lambda_cutoff;
        j["qubit_budget"] = static_cast<std::int64_t>(qubit_budget);
        j["jobs"] = static_cast<std::int64_t>(jobs);
        j["standardize"] = standardize;
        return j;
    }
};

/// A finished run: the serializable document plus the exit-code verdict.
/// Wall-clock time is reported on the console only; keeping it out of the
/// document is what makes identical runs byte-identical.
struct Report {
    nlohmann::json document;
    bool success = true;
    double wall_ms = 0.0;
};

namespace detail {

inline nlohmann::json vector_json(const RealVector& v) {
    nlohmann::json j = nlohmann::json::array();
    for (double x : v) j.push_back(x);
    return j;
}

inline nlohmann::json dataset_echo(const Dataset& ds) {
    nlohmann::json j;
    j["source"] = ds.source.empty() ? nlohmann::json(nullptr) : nlohmann::json(ds.source);
    j["rows"] = static_cast<std::int64_t>(ds.x.rows());
    j["cols"] = static_cast<std::int64_t>(ds.x.cols());
    nlohmann::json names = nlohmann::json::array();
    for (const auto& n : ds.feature_names) names.push_back(n);
    j["feature_names"] = names;
    j["y_norm"] = ds.y_norm;
    return j;
}

inline nlohmann::json versions_json() {
    nlohmann::json j;
    j["format"] = kReportFormatVersion;
    j["qridge"] = kVersion;
    return j;
}

/// 4-sigma binomial margin on the signed swap estimate, propagated through
/// the prediction rescaling.
inline double swap_shot_margin(double success_probability, std::size_t shots, double scale) {
    if (shots == 0) return 0.0;
    const double var = std::max(0.0, success_probability * (1.0 - success_probability)) /
                       static_cast<double>(shots);
    return 4.0 * 4.0 * std::sqrt(var) * scale;
}

inline nlohmann::json clock_readout_json(const std::map<double, double>& readout) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [lam2, weight] : readout) {
        nlohmann::json entry;
        entry["eigenvalue"] = lam2;
        entry["weight"] = weight;
        j.push_back(entry);
    }
    return j;
}

}  // namespace detail

/// Quantum prediction for one new input, verified against the closed-form
/// classical solution. Success means the normalized prediction sits inside
/// the resolution bound (plus the shot margin when sampling).
inline Report run_predict(const Dataset& dataset, const RealVector& x_new_raw, double alpha,
                          const RunConfig& cfg) {
    cfg.validate();
    if (x_new_raw.size() != dataset.x.cols())
        throw std::invalid_argument("x_new length does not match dataset feature count");
    const auto start = std::chrono::steady_clock::now();

    const Dataset ds = cfg.standardize ? standardized(dataset) : dataset;
    const RealVector x_new = cfg.standardize ? standardize_like(dataset, x_new_raw) : x_new_raw;

    const PredictOutcome outcome = predict(ds.x, ds.y, x_new, alpha, cfg.predict_config());

    const SVDResult sv = svd(ds.x, cfg.lambda_cutoff);
    const double classical = ridge_predict(ridge_weights(sv, ds.y, alpha), x_new);
    const double fro = ds.x.frobenius_norm();
    const double y_norm = norm(ds.y);
    const double x_norm = norm(x_new);
    const double scale = y_norm * x_norm / fro;
    const double classical_normalized = scale > 0.0 ? classical / scale : 0.0;

    const double err_bound = cfg.error_bound(sv.condition_number);
    const double rescale = std::sqrt(outcome.p1) / outcome.c1_used;
    const double shot_margin =
        detail::swap_shot_margin(outcome.swap_success_probability, cfg.shots, rescale);
    const double abs_normalized = std::abs(outcome.y_prime_normalized - classical_normalized);
    const bool success = abs_normalized <= err_bound + shot_margin;

    nlohmann::json doc;
    doc["mode"] = "predict";
    doc["config"] = cfg.echo();
    doc["inputs"] = detail::dataset_echo(dataset);
    doc["inputs"]["x_new"] = detail::vector_json(x_new_raw);
    doc["inputs"]["alpha"] = alpha;

    nlohmann::json out;
    out["y_prime"] = outcome.y_prime;
    out["y_prime_normalized"] = outcome.y_prime_normalized;
    out["p1"] = outcome.p1;
    out["swap_estimate"] = outcome.swap_estimate;
    out["c1_used"] = outcome.c1_used;
    out["clock_residual"] = outcome.clock_residual;
    out["clock_readout"] = detail::clock_readout_json(outcome.clock_readout);
    out["lmr_error"] =
        outcome.lmr_error ? nlohmann::json(*outcome.lmr_error) : nlohmann::json(nullptr);
    nlohmann::json enc;
    enc["matrix"] = outcome.encode_probability_matrix;
    enc["y"] = outcome.encode_probability_y;
    enc["x_new"] = outcome.encode_probability_x_new;
    out["encoding_success"] = enc;
    doc["outcome"] = out;

    nlohmann::json cl;
    cl["y_prime"] = classical;
    cl["y_prime_normalized"] = classical_normalized;
    cl["condition_number"] = sv.condition_number;
    cl["rank"] = static_cast<std::int64_t>(sv.rank);
    doc["classical"] = cl;

    nlohmann::json errs;
    errs["abs"] = std::abs(outcome.y_prime - classical);
    errs["rel"] = std::abs(outcome.y_prime - classical) / std::max(1e-300, std::abs(classical));
    errs["abs_normalized"] = abs_normalized;
    errs["err_bound"] = err_bound;
    errs["shot_margin"] = shot_margin;
    doc["errors"] = errs;

    doc["success"] = success;
    doc["versions"] = detail::versions_json();

    Report report;
    report.document = std::move(doc);
    report.success = success;
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Quantum loss curve over the alpha grid plus the grid argmin, both
/// cross-checked against the classical loss. Success means the quantum
/// selection is consistent with the classical one up to the loss tolerance.
inline Report run_tune(const Dataset& dataset, const AlphaGrid& grid, const RunConfig& cfg) {
    cfg.validate();
    grid.validate();
    if (dataset.x.rows() < 2) throw std::invalid_argument("tune requires at least two rows");
    const auto start = std::chrono::steady_clock::now();

    const Dataset ds = cfg.standardize ? standardized(dataset) : dataset;
    const TuneOutcome outcome = tune(ds.x, ds.y, grid, cfg.tune_config());

    const SVDResult sv = svd(ds.x, cfg.lambda_cutoff);
    RealVector y_unit(ds.y.size());
    const double y_norm = norm(ds.y);
    for (std::size_t i = 0; i < ds.y.size(); ++i) y_unit[i] = ds.y[i] / y_norm;

    const double err_bound = cfg.error_bound(sv.condition_number);
    const double loss_margin = cfg.shots == 0 ? 0.0 : 16.0 / std::sqrt(static_cast<double>(cfg.shots));

    nlohmann::json curve = nlohmann::json::array();
    bool curve_ok = true;
    for (const auto& r : outcome.results) {
        nlohmann::json entry;
        entry["alpha"] = r.alpha;
        if (r.error.empty()) {
            const double classical = classical_loss(sv, y_unit, r.alpha);
            entry["loss"] = r.loss;
            entry["classical_loss"] = classical;
            entry["p2"] = r.p2;
            entry["fitted_overlap"] = r.fitted_overlap;
            entry["abs_error"] = std::abs(r.loss - classical);
            curve_ok = curve_ok && std::abs(r.loss - classical) <= err_bound + loss_margin;
        } else {
            entry["error"] = r.error;
            curve_ok = false;
        }
        curve.push_back(entry);
    }

    // Selection is allowed to differ only when the classical losses of the
    // two picks are within the pointwise tolerance of each other.
    bool selection_ok = outcome.selected_alpha == outcome.classical_selected_alpha;
    if (!selection_ok) {
        const double at_quantum = classical_loss(sv, y_unit, outcome.selected_alpha);
        const double at_classical = classical_loss(sv, y_unit, outcome.classical_selected_alpha);
        selection_ok = std::abs(at_quantum - at_classical) <= 2.0 * (err_bound + loss_margin);
    }
    const bool success = curve_ok && selection_ok;

    nlohmann::json doc;
    doc["mode"] = "tune";
    doc["config"] = cfg.echo();
    doc["inputs"] = detail::dataset_echo(dataset);
    nlohmann::json grid_json;
    grid_json["alpha_min"] = grid.alpha_min;
    grid_json["alpha_max"] = grid.alpha_max;
    grid_json["count"] = static_cast<std::int64_t>(grid.count);
    grid_json["log_spaced"] = grid.log_spaced;
    doc["inputs"]["grid"] = grid_json;

    nlohmann::json out;
    out["curve"] = curve;
    out["selected_alpha"] = outcome.selected_alpha;
    out["classical_selected_alpha"] = outcome.classical_selected_alpha;
    for (const auto& r : outcome.results) {
        if (!r.error.empty()) continue;
        nlohmann::json enc;
        enc["matrix"] = r.encode_probability_matrix;
        enc["y"] = r.encode_probability_y;
        out["encoding_success"] = enc;  // alpha-independent, take any healthy entry
        break;
    }
    doc["outcome"] = out;

    nlohmann::json errs;
    errs["err_bound"] = err_bound;
    errs["loss_margin"] = loss_margin;
    doc["errors"] = errs;

    doc["success"] = success;
    doc["versions"] = detail::versions_json();

    Report report;
    report.document = std::move(doc);
    report.success = success;
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Runs the prediction pipeline on every training row and checks the
/// batch of predictions against the classical fitted values.
inline Report run_compare(const Dataset& dataset, double alpha, const RunConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const Dataset ds = cfg.standardize ? standardized(dataset) : dataset;
    const SVDResult sv = svd(ds.x, cfg.lambda_cutoff);
    const RealVector fitted = fitted_values(sv, ds.y, alpha);
    const double fro = ds.x.frobenius_norm();
    const double y_norm = norm(ds.y);
    const double err_bound = cfg.error_bound(sv.condition_number);

    nlohmann::json rows = nlohmann::json::array();
    bool success = true;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < ds.x.rows(); ++i) {
        PredictConfig pcfg = cfg.predict_config();
        pcfg.seed = mix_seed(cfg.seed, i);
        const RealVector xi = ds.x.row(i);
        const PredictOutcome outcome = predict(ds.x, ds.y, xi, alpha, pcfg);
        const double scale = y_norm * norm(xi) / fro;
        const double rescale = outcome.c1_used > 0.0 ? std::sqrt(outcome.p1) / outcome.c1_used : 0.0;
        const double tolerance =
            (err_bound + detail::swap_shot_margin(outcome.swap_success_probability, cfg.shots, rescale)) *
            std::max(scale, 1e-300);
        const double abs_err = std::abs(outcome.y_prime - fitted[i]);
        max_abs = std::max(max_abs, abs_err);
        success = success && abs_err <= tolerance;

        nlohmann::json entry;
        entry["row"] = static_cast<std::int64_t>(i);
        entry["quantum"] = outcome.y_prime;
        entry["classical"] = fitted[i];
        entry["abs_error"] = abs_err;
        entry["tolerance"] = tolerance;
        rows.push_back(entry);
    }

    nlohmann::json doc;
    doc["mode"] = "compare";
    doc["config"] = cfg.echo();
    doc["inputs"] = detail::dataset_echo(dataset);
    doc["inputs"]["alpha"] = alpha;
    nlohmann::json out;
    out["rows"] = rows;
    out["max_abs_error"] = max_abs;
    doc["outcome"] = out;
    nlohmann::json errs;
    errs["err_bound"] = err_bound;
    doc["errors"] = errs;
    doc["success"] = success;
    doc["versions"] = detail::versions_json();

    Report report;
    report.document = std::move(doc);
    report.success = success;
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Spectral diagnostics: retained singular values, their normalized squares,
/// condition number, rank, and which clock widths represent the spectrum
/// exactly.
inline Report run_spectrum(const Dataset& dataset, const RunConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const Dataset ds = cfg.standardize ? standardized(dataset) : dataset;
    const SVDResult sv = svd(ds.x, cfg.lambda_cutoff);
    const double fro = ds.x.frobenius_norm();

    nlohmann::json values = nlohmann::json::array();
    for (double lam : sv.singular_values) values.push_back(lam);
    nlohmann::json normalized = nlohmann::json::array();
    std::vector<double> lam2s;
    for (double lam : sv.singular_values) {
        const double lam2 = (lam / fro) * (lam / fro);
        lam2s.push_back(lam2);
        normalized.push_back(lam2);
    }

    nlohmann::json dyadic;
    for (std::size_t t = 1; t <= kMaxPrecisionBits; ++t) {
        bool exact = true;
        for (double lam2 : lam2s) {
            const double clock =
                lam2 * cfg.evolution_time / (2.0 * kPi) * static_cast<double>(1ULL << t);
            if (std::abs(clock - std::round(clock)) > 1e-9) exact = false;
        }
        dyadic[std::to_string(t)] = exact;
    }

    nlohmann::json doc;
    doc["mode"] = "spectrum";
    doc["config"] = cfg.echo();
    doc["inputs"] = detail::dataset_echo(dataset);
    nlohmann::json out;
    out["singular_values"] = values;
    out["normalized_squared"] = normalized;
    out["condition_number"] = sv.condition_number;
    out["rank"] = static_cast<std::int64_t>(sv.rank);
    out["frobenius_norm"] = fro;
    out["dyadic_compatible"] = dyadic;
    doc["outcome"] = out;
    doc["success"] = true;
    doc["versions"] = detail::versions_json();

    Report report;
    report.document = std::move(doc);
    report.success = true;
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Writes the report document to disk with the deterministic serializer.
inline void emit_report(const Report& report, const std::string& path) {
    write_report_file(report.document, path);
}

}  // namespace qridge
