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

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qridge/qridge.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNumericalFailure = 1;
constexpr int kExitUsageError = 2;

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string cell = qridge::detail::trim(text.substr(pos, comma - pos));
        if (cell.empty()) throw std::invalid_argument("empty entry in number list '" + text + "'");
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
        if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value))
            throw std::invalid_argument("invalid number '" + cell + "' in list");
        out.push_back(value);
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

struct CommonFlags {
    std::string data_path;
    std::string out_path;
    qridge::RunConfig config;
    std::size_t lmr_steps_flag = 0;  // nonzero when --lmr-steps given
    bool exact_flag = false;

    void attach(CLI::App* cmd, bool needs_data = true) {
        auto* data = cmd->add_option("--data", data_path, "training CSV (last column must be 'y')");
        if (needs_data) data->required();
        cmd->add_option("--bits", config.precision_bits, "clock register width t (1..12)");
        cmd->add_option("--shots", config.shots, "swap-test shots (0 = analytic)");
        cmd->add_option("--seed", config.seed, "seed for all sampling");
        cmd->add_option("--t0", config.evolution_time, "evolution time per unit eigenvalue");
        cmd->add_flag("--exact", exact_flag, "use the exact exponential (default)");
        cmd->add_option("--lmr-steps", lmr_steps_flag, "use the sliced exponential with Q slices");
        cmd->add_option("--c1", config.c1, "explicit inverse-shift rotation constant");
        cmd->add_option("--c2", config.c2, "filter rotation constant");
        cmd->add_option("--lambda-cutoff", config.lambda_cutoff, "relative singular value cutoff");
        cmd->add_option("--qubit-budget", config.qubit_budget, "simulated qubit ceiling (<= 24)");
        cmd->add_option("--jobs", config.jobs, "parallel alpha evaluations for tune");
        cmd->add_flag("--standardize", config.standardize, "center/scale features before fitting");
        cmd->add_option("--out", out_path, "write the report file here");
    }

    void finalize() {
        if (lmr_steps_flag > 0) {
            if (exact_flag)
                throw std::invalid_argument("--exact and --lmr-steps are mutually exclusive");
            config.exact = false;
            config.lmr_steps = lmr_steps_flag;
        }
        config.validate();
    }
};

void finish(const qridge::Report& report, const std::string& out_path) {
    if (!out_path.empty()) qridge::emit_report(report, out_path);
    const std::string mode = report.document.at("mode").get<std::string>();
    std::printf("mode: %s\n", mode.c_str());
    if (mode == "predict") {
        std::printf("  quantum y': %.12g\n", report.document["outcome"]["y_prime"].get<double>());
        std::printf("  classical y': %.12g\n", report.document["classical"]["y_prime"].get<double>());
        std::printf("  |error| (normalized): %.3g  bound: %.3g\n",
                    report.document["errors"]["abs_normalized"].get<double>(),
                    report.document["errors"]["err_bound"].get<double>() +
                        report.document["errors"]["shot_margin"].get<double>());
    } else if (mode == "tune") {
        std::printf("  selected alpha: %.12g\n",
                    report.document["outcome"]["selected_alpha"].get<double>());
        std::printf("  classical alpha: %.12g\n",
                    report.document["outcome"]["classical_selected_alpha"].get<double>());
    } else if (mode == "compare") {
        std::printf("  max |error|: %.3g over %zu rows\n",
                    report.document["outcome"]["max_abs_error"].get<double>(),
                    report.document["outcome"]["rows"].size());
    } else if (mode == "spectrum") {
        std::printf("  rank: %lld  condition number: %.6g\n",
                    static_cast<long long>(report.document["outcome"]["rank"].get<std::int64_t>()),
                    report.document["outcome"]["condition_number"].get<double>());
    }
    std::printf("  success: %s  (%.1f ms)\n", report.success ? "yes" : "no", report.wall_ms);
    if (!out_path.empty()) std::printf("  report: %s\n", out_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale simulator for quantum ridge-regression pipelines"};
    app.require_subcommand(1);

    CommonFlags predict_flags, tune_flags, compare_flags, spectrum_flags;
    std::string x_new_text;
    double alpha = 0.0;
    double compare_alpha = 0.0;
    qridge::AlphaGrid grid;
    grid.count = 16;
    bool grid_min_given = false, grid_max_given = false;

    auto* predict_cmd = app.add_subcommand("predict", "predict y' for a new input");
    predict_flags.attach(predict_cmd);
    predict_cmd->add_option("--x-new", x_new_text, "comma-separated new input")->required();
    predict_cmd->add_option("--alpha", alpha, "regularization strength")->required();

    auto* tune_cmd = app.add_subcommand("tune", "select alpha over a grid");
    tune_flags.attach(tune_cmd);
    tune_cmd->add_option("--alpha-min", grid.alpha_min, "grid start (default lambda_min^2)")
        ->trigger_on_parse()
        ->each([&](const std::string&) { grid_min_given = true; });
    tune_cmd->add_option("--alpha-max", grid.alpha_max, "grid end (default lambda_max^2)")
        ->trigger_on_parse()
        ->each([&](const std::string&) { grid_max_given = true; });
    tune_cmd->add_option("--alpha-count", grid.count, "grid size");
    tune_cmd->add_flag("--alpha-log", grid.log_spaced, "log-spaced grid instead of linear");

    auto* compare_cmd = app.add_subcommand("compare", "predict every training row vs fitted values");
    compare_flags.attach(compare_cmd);
    compare_cmd->add_option("--alpha", compare_alpha, "regularization strength")->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "report the singular spectrum");
    spectrum_flags.attach(spectrum_cmd);

    try {
        app.parse(argc, argv);

        if (predict_cmd->parsed()) {
            predict_flags.finalize();
            const qridge::Dataset ds = qridge::load_csv(predict_flags.data_path);
            const std::vector<double> x_new = parse_number_list(x_new_text);
            const qridge::Report report =
                qridge::run_predict(ds, x_new, alpha, predict_flags.config);
            finish(report, predict_flags.out_path);
            return report.success ? kExitSuccess : kExitNumericalFailure;
        }
        if (tune_cmd->parsed()) {
            tune_flags.finalize();
            const qridge::Dataset ds = qridge::load_csv(tune_flags.data_path);
            if (!grid_min_given || !grid_max_given) {
                // Default endpoints track the squared spectrum extremes, the
                // natural range between under- and over-regularization.
                const qridge::SVDResult sv = qridge::svd(
                    tune_flags.config.standardize ? qridge::standardized(ds).x : ds.x,
                    tune_flags.config.lambda_cutoff);
                if (!grid_min_given)
                    grid.alpha_min = sv.singular_values.back() * sv.singular_values.back();
                if (!grid_max_given)
                    grid.alpha_max = sv.singular_values.front() * sv.singular_values.front();
                if (grid.count > 1 && !(grid.alpha_max > grid.alpha_min))
                    grid.alpha_max = grid.alpha_min * 2.0 + 1e-6;
            }
            const qridge::Report report = qridge::run_tune(ds, grid, tune_flags.config);
            finish(report, tune_flags.out_path);
            return report.success ? kExitSuccess : kExitNumericalFailure;
        }
        if (compare_cmd->parsed()) {
            compare_flags.finalize();
            const qridge::Dataset ds = qridge::load_csv(compare_flags.data_path);
            const qridge::Report report =
                qridge::run_compare(ds, compare_alpha, compare_flags.config);
            finish(report, compare_flags.out_path);
            return report.success ? kExitSuccess : kExitNumericalFailure;
        }
        if (spectrum_cmd->parsed()) {
            spectrum_flags.finalize();
            const qridge::Dataset ds = qridge::load_csv(spectrum_flags.data_path);
            const qridge::Report report = qridge::run_spectrum(ds, spectrum_flags.config);
            finish(report, spectrum_flags.out_path);
            return report.success ? kExitSuccess : kExitNumericalFailure;
        }
        std::fprintf(stderr, "no subcommand selected\n");
        return kExitUsageError;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsageError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumericalFailure;
    }
}
