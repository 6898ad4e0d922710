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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qridge/qridge.hpp"
#include "test_util.hpp"

#ifndef QRIDGE_CLI_PATH
#define QRIDGE_CLI_PATH "qridge"
#endif

namespace {

using namespace qridge;
namespace fs = std::filesystem;

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

// ---------------------------------------------------------------------------
// Criterion 1: Algorithm 1 oracle equivalence on random instances.

double classical_normalized_prediction(const SVDResult& sv, double fro, const RealVector& y,
                                       const RealVector& x_new, double alpha) {
    const double yn = norm(y);
    const double xn = norm(x_new);
    const double alpha_n = alpha / (fro * fro);
    double out = 0.0;
    for (std::size_t r = 0; r < sv.rank; ++r) {
        const double lam = sv.singular_values[r] / fro;
        out += lam / (lam * lam + alpha_n) * dot(sv.u.column(r), y) / yn *
               dot(sv.v.column(r), x_new) / xn;
    }
    return out;
}

bool criterion_oracle_predict(std::string& detail) {
    std::mt19937_64 gen(20260801);
    std::uniform_real_distribution<double> lam_dist(0.1, 1.0);
    const std::array<std::size_t, 3> sizes{2, 4, 8};
    const std::array<double, 3> alphas{0.05, 0.25, 1.0};
    PredictConfig cfg;
    cfg.pe.precision_bits = 10;

    double worst_ratio = 0.0;
    int failures = 0;
    const int trials = 54;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t m = sizes[static_cast<std::size_t>(trial) % 3];
        const std::size_t n = sizes[(static_cast<std::size_t>(trial) / 3) % 3];
        const std::size_t max_rank = std::min<std::size_t>({m, n, 4});
        const std::size_t rank = 1 + static_cast<std::size_t>(trial) % max_rank;
        RealVector lams(rank);
        lams[0] = 1.0;
        for (std::size_t r = 1; r < rank; ++r) lams[r] = lam_dist(gen);  // kappa <= 10
        const RealMatrix x = testing::matrix_with_spectrum(m, n, lams, gen);
        const RealVector y = testing::random_unit_vector(m, gen);
        const RealVector x_new = testing::random_unit_vector(n, gen);
        const double alpha = alphas[static_cast<std::size_t>(trial) % 3];

        const SVDResult sv = svd(x);
        const double bound = 5.0 * sv.condition_number * sv.condition_number / 1024.0;
        const PredictOutcome out = predict(x, y, x_new, alpha, cfg);
        const double classical =
            classical_normalized_prediction(sv, x.frobenius_norm(), y, x_new, alpha);
        const double err = std::abs(out.y_prime_normalized - classical);
        worst_ratio = std::max(worst_ratio, err / bound);
        if (err > bound) ++failures;
    }
    std::ostringstream os;
    os << trials << " instances, worst |err|/bound = " << worst_ratio;
    detail = os.str();
    return failures == 0;
}

// ---------------------------------------------------------------------------
// Criterion 2: Algorithm 2 oracle equivalence over the loss curve.

bool criterion_oracle_tune(std::string& detail) {
    std::mt19937_64 gen(20260802);
    std::uniform_real_distribution<double> lam_dist(0.1, 1.0);
    const std::array<std::size_t, 3> sizes{2, 4, 8};
    TuneConfig cfg;
    cfg.pe.precision_bits = 10;

    double worst_ratio = 0.0;
    int curve_failures = 0;
    int selection_failures = 0;
    const int trials = 12;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t m = sizes[static_cast<std::size_t>(trial) % 3];
        const std::size_t n = sizes[(static_cast<std::size_t>(trial) / 3) % 3];
        const std::size_t max_rank = std::min<std::size_t>({m, n, 4});
        const std::size_t rank = 1 + static_cast<std::size_t>(trial) % max_rank;
        RealVector lams(rank);
        lams[0] = 1.0;
        for (std::size_t r = 1; r < rank; ++r) lams[r] = lam_dist(gen);
        const RealMatrix x = testing::matrix_with_spectrum(m, n, lams, gen);
        RealVector y = testing::random_unit_vector(m, gen);
        // Keep most of y inside the column space so no candidate starves.
        {
            const SVDResult sv = svd(x);
            RealVector projected(m, 0.0);
            for (std::size_t r = 0; r < sv.rank; ++r) {
                const double c = dot(sv.u.column(r), y);
                for (std::size_t i = 0; i < m; ++i) projected[i] += c * sv.u(i, r);
            }
            for (std::size_t i = 0; i < m; ++i) y[i] = 0.75 * projected[i] + 0.25 * y[i];
            const double len = norm(y);
            for (auto& v : y) v /= len;
        }

        const SVDResult sv = svd(x);
        const double bound = 5.0 * sv.condition_number * sv.condition_number / 1024.0;
        AlphaGrid grid;
        grid.alpha_min = 0.05;
        grid.alpha_max = 1.0;
        grid.count = 6;
        const TuneOutcome out = tune(x, y, grid, cfg);

        std::vector<double> classical_losses;
        for (const auto& r : out.results) {
            if (!r.error.empty()) {
                ++curve_failures;
                continue;
            }
            const double classical = classical_loss(sv, y, r.alpha);
            classical_losses.push_back(classical);
            const double err = std::abs(r.loss - classical);
            worst_ratio = std::max(worst_ratio, err / bound);
            if (err > bound) ++curve_failures;
        }
        // Argmin agreement is required whenever the classical gap is wide.
        std::vector<double> sorted = classical_losses;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.size() >= 2 && sorted[1] - sorted[0] > 2.0 * bound &&
            out.selected_alpha != out.classical_selected_alpha)
            ++selection_failures;
    }
    std::ostringstream os;
    os << trials << " instances x 6 alphas, worst |err|/bound = " << worst_ratio
       << ", selection mismatches = " << selection_failures;
    detail = os.str();
    return curve_failures == 0 && selection_failures == 0;
}

// ---------------------------------------------------------------------------
// Criterion 3: dyadic exactness of the clock, p(1), and p(2).

bool criterion_dyadic(std::string& detail) {
    std::mt19937_64 gen(20260803);
    PredictConfig pcfg;
    pcfg.pe.precision_bits = 10;
    TuneConfig tcfg;
    tcfg.pe.precision_bits = 10;

    const std::vector<RealVector> spectra{
        {0.5, 0.5},
        {0.5, 0.25, 0.25},
        {0.5, 0.25, 0.125, 0.125},
        {0.75, 0.25},
    };
    double worst_clock = 0.0, worst_p1 = 0.0, worst_p2 = 0.0;
    bool ok = true;
    for (const auto& weights : spectra) {
        const std::size_t m = 4, n = 4;
        const RealMatrix x = testing::dyadic_matrix(m, n, weights, gen);
        const RealVector y = testing::random_unit_vector(m, gen);
        const RealVector x_new = testing::random_unit_vector(n, gen);
        const double alpha = 0.125 * x.frobenius_norm() * x.frobenius_norm();

        // Clock mass concentrates on the decoded spectrum values.
        const PredictOutcome out = predict(x, y, x_new, alpha, pcfg);
        double on_spectrum = 0.0;
        for (const auto& [lam2, mass] : out.clock_readout) {
            for (double w : weights) {
                if (std::abs(lam2 - w) < 1e-9) on_spectrum += mass;
            }
        }
        worst_clock = std::max(worst_clock, 1.0 - on_spectrum);
        if (1.0 - on_spectrum > 1e-10) ok = false;

        // p(1) equals the analytic branch mass.
        const detail::NormalizedProblem prob = detail::analyze(x, pcfg.lambda_cutoff);
        const double alpha_n = prob.normalized_alpha(alpha);
        double p1_formula = 0.0;
        for (double lam2 : prob.lambda2) {
            const double f = out.c1_used / (lam2 + alpha_n);
            p1_formula += lam2 * f * f;
        }
        worst_p1 = std::max(worst_p1, std::abs(out.p1 - p1_formula));
        if (std::abs(out.p1 - p1_formula) > 1e-9) ok = false;

        // p(2) with C2 = 1 equals the squared norm of the classical fit.
        const FittedState fs = fitted_state(x, y, alpha, tcfg);
        double p2_formula = 0.0;
        for (std::size_t r = 0; r < prob.sv.rank; ++r) {
            const double lam2 = prob.lambda2[r];
            const double c = dot(prob.sv.u.column(r), y);
            const double g = lam2 / (lam2 + alpha_n);
            p2_formula += c * c * g * g;
        }
        worst_p2 = std::max(worst_p2, std::abs(fs.p2 - p2_formula));
        if (std::abs(fs.p2 - p2_formula) > 1e-9) ok = false;
    }
    std::ostringstream os;
    os << "clock leakage <= " << worst_clock << ", |p1 - formula| <= " << worst_p1
       << ", |p2 - ||yhat||^2| <= " << worst_p2;
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 4: swap-test shot statistics and sign recovery.

bool criterion_swap_statistics(std::string& detail) {
    std::mt19937_64 gen(20260804);
    QubitRegisterLayout layout({{"p", 3}});
    const std::size_t shots = 100000;
    int within = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        const StateVector a = testing::random_real_state(layout, gen);
        const StateVector b = testing::random_real_state(layout, gen);
        const double exact = inner_product(a, b).real();
        const SwapTestResult r = signed_swap_test(a, b, shots, 1000 + static_cast<std::uint64_t>(trial));
        const double sigma_pr = std::sqrt(r.success_probability * (1.0 - r.success_probability) /
                                          static_cast<double>(shots));
        if (std::abs(r.estimate - exact) <= 4.0 * 4.0 * sigma_pr) ++within;
    }

    // Sign recovery is exact in analytic mode.
    const StateVector a = testing::random_real_state(layout, gen);
    std::vector<cdouble> neg(a.amplitudes());
    for (auto& x : neg) x = -x;
    const bool signs_ok =
        std::abs(signed_swap_test(a, a, 0, 0).estimate - 1.0) < 1e-10 &&
        std::abs(signed_swap_test(a, StateVector(layout, neg), 0, 0).estimate + 1.0) < 1e-10;

    std::ostringstream os;
    os << within << "/" << trials << " trials within 4 sigma, sign recovery "
       << (signs_ok ? "exact" : "BROKEN");
    detail = os.str();
    return within >= 99 && signs_ok;
}

// ---------------------------------------------------------------------------
// Criterion 5: simulator hygiene.

bool criterion_hygiene(std::string& detail) {
    std::mt19937_64 gen(20260805);
    bool ok = true;
    double worst_norm = 0.0;

    QubitRegisterLayout layout({{"a", 2}, {"b", 2}, {"c", 2}});
    StateVector psi = testing::random_state(layout, gen);
    for (int step = 0; step < 20; ++step) {
        const char* regs[] = {"a", "b", "c"};
        psi = apply_unitary(psi, testing::random_unitary(4, gen), {regs[step % 3]});
        worst_norm = std::max(worst_norm, std::abs(psi.norm() - 1.0));
    }
    ok = ok && worst_norm <= 1e-10;

    double worst_trace = 0.0, worst_eig = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = partial_trace(testing::random_state(layout, gen), "b");
        cdouble tr(0.0, 0.0);
        for (std::size_t i = 0; i < rho.dimension(); ++i) tr += rho.entries()(i, i);
        worst_trace = std::max(worst_trace, std::abs(tr - cdouble(1.0)));
        worst_eig = std::min(worst_eig, rho.min_eigenvalue());
        worst_eig = std::max(worst_eig, -worst_eig);
    }
    ok = ok && worst_trace <= 1e-12 && worst_eig <= 1e-10;

    double worst_qft = 0.0;
    for (std::size_t w = 1; w <= 8; ++w)
        worst_qft = std::max(worst_qft, unitarity_defect(qft_matrix(w)));
    ok = ok && worst_qft <= 1e-12;

    // Phase estimation round trip, including a non-dyadic unitary.
    double worst_roundtrip = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        QubitRegisterLayout pe_layout({{"tgt", 2}, {"clk", 6}});
        PhaseEstimationConfig cfg;
        cfg.precision_bits = 6;
        const ComplexMatrix u = testing::random_unitary(4, gen);
        const StateVector in =
            tensor(testing::random_state(QubitRegisterLayout({{"tgt", 2}}), gen),
                   StateVector::zero_state(QubitRegisterLayout({{"clk", 6}})));
        const StateVector mid = phase_estimation(in, u, "tgt", "clk", cfg);
        const InversePhaseEstimationResult undone =
            inverse_phase_estimation(mid, u, "tgt", "clk", cfg);
        worst_roundtrip = std::max(worst_roundtrip, undone.clock_residual);
        for (std::uint64_t i = 0; i < 4; ++i)
            worst_roundtrip = std::max(
                worst_roundtrip, std::abs(undone.state.amplitude(i) - in.amplitude(i * 64)));
    }
    ok = ok && worst_roundtrip <= 1e-10;

    std::ostringstream os;
    os << "norm drift " << worst_norm << ", trace defect " << worst_trace << ", qft defect "
       << worst_qft << ", PE round trip " << worst_roundtrip;
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 6: sliced-exponential fidelity.

bool criterion_lmr(std::string& detail) {
    const DensityMatrix rho = DensityMatrix::diagonal({0.8, 0.2});
    PhaseEstimationConfig cfg;
    const auto exact = density_exponential(rho, kPi, cfg);
    cfg.exact_unitary = false;

    std::vector<double> errors;
    for (std::size_t q : {64, 128, 256, 512}) {
        cfg.lmr_steps = q;
        const auto approx = density_exponential(rho, kPi, cfg);
        errors.push_back(operator_norm(approx.matrix - exact.matrix));
    }
    const bool monotone = errors[0] > errors[1] && errors[1] > errors[2] && errors[2] > errors[3];
    std::ostringstream os;
    os << "errors (Q=64..512): " << errors[0] << " " << errors[1] << " " << errors[2] << " "
       << errors[3];
    detail = os.str();
    return monotone && errors[2] <= 0.05;
}

// ---------------------------------------------------------------------------
// Criterion 7: amplitude-encoding success statistics.

bool criterion_encoding_probability(std::string& detail) {
    QubitRegisterLayout one({{"v", 1}});
    const double analytic = amplitude_encode({1.0, 0.0}, one).success_probability;
    const std::size_t shots = 100000;
    const std::uint64_t count = encoding_success_count({1.0, 0.0}, one, shots, 20260807);
    const double freq = static_cast<double>(count) / static_cast<double>(shots);
    const double sigma = std::sqrt(0.25 / static_cast<double>(shots));
    std::ostringstream os;
    os << "analytic P = " << analytic << ", sampled " << freq << " (4 sigma = " << 4.0 * sigma
       << ")";
    detail = os.str();
    return std::abs(analytic - 0.5) < 1e-12 && std::abs(freq - 0.5) <= 4.0 * sigma;
}

// ---------------------------------------------------------------------------
// Criterion 8: CLI determinism and the exit-code contract.

struct CliRun {
    int exit_code = -1;
    bool ran = false;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + QRIDGE_CLI_PATH + "\" " + args +
                            " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CliRun r;
    if (status == -1) return r;
    r.ran = true;
#ifdef WEXITSTATUS
    r.exit_code = WEXITSTATUS(status);
#else
    r.exit_code = status;
#endif
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_cli(std::string& detail) {
    const fs::path dir =
        fs::temp_directory_path() / ("qridge_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const auto cleanup = [&] {
        std::error_code ec;
        fs::remove_all(dir, ec);
    };

    {
        std::ofstream f(dir / "good.csv", std::ios::binary);
        f << "x1,x2,y\n1,0,3\n0,1,4\n";
    }
    {
        std::ofstream f(dir / "nan.csv", std::ios::binary);
        f << "x1,x2,y\n1,nan,3\n0,1,4\n";
    }
    {
        // Rank-1 design with y orthogonal to the column space: every tune
        // candidate starves, a pipeline-level numerical failure.
        std::ofstream f(dir / "orth.csv", std::ios::binary);
        f << "x1,x2,y\n1,0,1\n1,0,-1\n";
    }

    const std::string good = (dir / "good.csv").string();
    bool ok = true;
    std::ostringstream os;

    // Determinism across repeated invocations, all subcommands.
    const std::vector<std::pair<std::string, std::string>> runs{
        {"predict", "predict --data " + good + " --x-new 1,0 --alpha 0.1 --shots 500 --seed 7"},
        {"tune", "tune --data " + good + " --alpha-min 0.05 --alpha-max 0.5 --alpha-count 3"},
        {"compare", "compare --data " + good + " --alpha 0.1"},
        {"spectrum", "spectrum --data " + good},
    };
    for (const auto& [name, args] : runs) {
        const fs::path out1 = dir / (name + "_1.json");
        const fs::path out2 = dir / (name + "_2.json");
        const CliRun r1 = run_cli(args + " --out " + out1.string());
        const CliRun r2 = run_cli(args + " --out " + out2.string());
        if (!r1.ran || !r2.ran || r1.exit_code != 0 || r2.exit_code != 0) {
            ok = false;
            os << name << " exit " << r1.exit_code << "/" << r2.exit_code << "; ";
            continue;
        }
        const std::string b1 = slurp(out1);
        if (b1.empty() || b1 != slurp(out2)) {
            ok = false;
            os << name << " bytes differ; ";
        }
    }

    // Exit-code contract: 2 for usage/config errors, 1 for pipeline failures.
    const CliRun bad_xnew = run_cli("predict --data " + good + " --x-new 1,0,0 --alpha 0.1");
    const CliRun bad_csv =
        run_cli("predict --data " + (dir / "nan.csv").string() + " --x-new 1,0 --alpha 0.1");
    const CliRun starved = run_cli("tune --data " + (dir / "orth.csv").string() +
                                   " --alpha-min 0.05 --alpha-max 0.5 --alpha-count 2");
    if (bad_xnew.exit_code != 2) {
        ok = false;
        os << "bad x-new exit " << bad_xnew.exit_code << " (want 2); ";
    }
    if (bad_csv.exit_code != 2) {
        ok = false;
        os << "nan csv exit " << bad_csv.exit_code << " (want 2); ";
    }
    if (starved.exit_code != 1) {
        ok = false;
        os << "starved tune exit " << starved.exit_code << " (want 1); ";
    }

    if (ok) os << "4 subcommands byte-identical; exit codes 2/2/1 as contracted";
    detail = os.str();
    cleanup();
    return ok;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {"oracle equivalence, prediction pipeline", criterion_oracle_predict},
        {"oracle equivalence, loss curve and selection", criterion_oracle_tune},
        {"dyadic exactness of clock, p1, p2", criterion_dyadic},
        {"swap-test shot statistics and sign recovery", criterion_swap_statistics},
        {"simulator hygiene", criterion_hygiene},
        {"sliced exponential fidelity", criterion_lmr},
        {"amplitude-encoding success probability", criterion_encoding_probability},
        {"CLI determinism and exit codes", criterion_cli},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("%s criterion %zu: %s (%s)\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
