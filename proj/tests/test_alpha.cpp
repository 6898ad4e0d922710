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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qridge/alpha.hpp"
#include "test_util.hpp"

using namespace qridge;
using Catch::Approx;

namespace {

RealMatrix diag_fixture() {
    RealMatrix x(2, 2);
    x(0, 0) = 1.0;
    x(1, 1) = 0.5;
    return x;
}

constexpr double kDiagFixtureT0 = kPi / 1.6;

}  // namespace

TEST_CASE("alpha grid construction", "[alpha]") {
    AlphaGrid grid;
    grid.alpha_min = 0.1;
    grid.alpha_max = 0.5;
    grid.count = 5;
    const std::vector<double> values = grid.values();
    REQUIRE(values.size() == 5);
    CHECK(values.front() == 0.1);
    CHECK(values.back() == 0.5);
    CHECK(values[2] == Approx(0.3));
    for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] > values[i - 1]);

    grid.count = 1;
    CHECK(grid.values() == std::vector<double>{0.1});

    grid.count = 3;
    grid.log_spaced = true;
    const std::vector<double> logs = grid.values();
    CHECK(logs[1] == Approx(std::sqrt(0.1 * 0.5)));

    AlphaGrid bad;
    bad.count = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.count = 2;
    bad.alpha_min = -0.1;
    bad.alpha_max = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.alpha_min = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.alpha_min = 0.0;
    bad.log_spaced = true;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("fitted_state on the identity reproduces the target", "[alpha]") {
    TuneConfig cfg;
    cfg.pe.precision_bits = 6;
    const RealVector y{0.6, 0.8};
    const FittedState fs = fitted_state(RealMatrix::identity(2), y, 0.0, cfg);
    CHECK(fs.p2 == Approx(1.0).margin(1e-10));
    CHECK(fs.state.amplitude(0).real() == Approx(0.6).margin(1e-10));
    CHECK(fs.state.amplitude(1).real() == Approx(0.8).margin(1e-10));
}

TEST_CASE("fitted_state on a rank-1 design projects onto u1", "[alpha]") {
    std::mt19937_64 gen(501);
    const RealMatrix x = testing::dyadic_matrix(4, 4, {1.0}, gen);
    const SVDResult sv = svd(x);
    const RealVector u1 = sv.u.column(0);
    TuneConfig cfg;
    cfg.pe.precision_bits = 6;

    for (double alpha_n : {0.0, 0.3}) {
        const double alpha = alpha_n * std::pow(x.frobenius_norm(), 2);
        const FittedState fs = fitted_state(x, u1, alpha, cfg);
        // The single normalized weight is 1 exactly, so p2 = (1/(1+alpha_n))^2.
        CHECK(fs.p2 == Approx(std::pow(1.0 / (1.0 + alpha_n), 2)).margin(1e-9));
        double overlap = 0.0;
        for (std::size_t i = 0; i < 4; ++i) overlap += fs.state.amplitude(i).real() * u1[i];
        CHECK(std::abs(overlap) == Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("fitted_state starves outside the column space", "[alpha]") {
    RealMatrix x(2, 2);
    x(0, 0) = 1.0;
    x(1, 0) = 1.0;  // column space is span{(1,1)}
    const double s = 1.0 / std::sqrt(2.0);
    TuneConfig cfg;
    cfg.pe.precision_bits = 6;
    CHECK_THROWS_WITH(fitted_state(x, {s, -s}, 0.1, cfg),
                      Catch::Matchers::ContainsSubstring("starved"));
    CHECK_THROWS_AS(fitted_state(x, {1.0, 1.0}, 0.1, cfg), std::invalid_argument);  // not unit norm
}

TEST_CASE("quantum loss endpoints", "[alpha]") {
    TuneConfig cfg;
    cfg.pe.precision_bits = 8;
    const RealVector y{0.6, 0.8};
    CHECK(quantum_loss(RealMatrix::identity(2), y, 0.0, cfg).loss == Approx(0.0).margin(1e-6));

    // Large alpha: the filter passes almost nothing, the loss approaches 1.
    // (alpha stays small enough to keep the post-selection alive.)
    const double huge = 2e4;
    const AlphaResult far = quantum_loss(RealMatrix::identity(2), y, huge, cfg);
    CHECK(far.loss == Approx(1.0).margin(2e-3));
}

TEST_CASE("quantum loss matches the classical loss on the diagonal fixture", "[alpha]") {
    TuneConfig cfg;
    cfg.pe.precision_bits = 10;
    cfg.pe.evolution_time = kDiagFixtureT0;
    const double s = 1.0 / std::sqrt(2.0);
    const RealVector y{s, s};
    const RealMatrix x = diag_fixture();
    const AlphaResult r = quantum_loss(x, y, 0.25, cfg);
    const double classical = classical_loss(svd(x), y, 0.25);
    CHECK(r.loss == Approx(classical).margin(1e-3));
    CHECK(r.loss == Approx(classical).margin(1e-9));  // dyadic: exact
}

TEST_CASE("loss identity against the simulated state", "[alpha]") {
    // E computed from (p2, C2, overlap) must equal the squared distance
    // between the reconstructed fitted vector and the target.
    TuneConfig cfg;
    cfg.pe.precision_bits = 10;
    cfg.pe.evolution_time = kDiagFixtureT0;
    const double s = 1.0 / std::sqrt(2.0);
    const RealVector y{s, s};
    const RealMatrix x = diag_fixture();

    const FittedState fs = fitted_state(x, y, 0.25, cfg);
    const AlphaResult r = quantum_loss(x, y, 0.25, cfg);
    double direct = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double fit_i = std::sqrt(fs.p2) / fs.c2_used * fs.state.amplitude(i).real();
        direct += (fit_i - y[i]) * (fit_i - y[i]);
    }
    CHECK(r.loss == Approx(direct).margin(1e-9));
}

TEST_CASE("p2 equals the squared norm of the classical fitted values", "[alpha]") {
    std::mt19937_64 gen(502);
    // Dyadic weights at t = 10 with t0 = pi: multiples of 2/1024.
    const RealVector weights{0.5, 0.25, 0.25};
    const RealMatrix x = testing::dyadic_matrix(4, 4, weights, gen);
    const RealVector y = testing::random_unit_vector(4, gen);
    TuneConfig cfg;
    cfg.pe.precision_bits = 10;

    const double alpha_n = 0.125;
    const double alpha = alpha_n * std::pow(x.frobenius_norm(), 2);
    const FittedState fs = fitted_state(x, y, alpha, cfg);

    RealMatrix xn = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) xn(i, j) = x(i, j) / x.frobenius_norm();
    const RealVector fit = fitted_values(svd(xn), y, alpha_n);
    CHECK(fs.p2 == Approx(dot(fit, fit)).margin(1e-9));
}

TEST_CASE("filter factor decreases in alpha on the decoded spectrum", "[alpha]") {
    EigenRotationSpec spec;
    spec.mode = RotationMode::kFilter;
    spec.constant = 1.0;
    spec.precision_bits = 10;
    const std::vector<double> lam2s{0.8, 0.2};
    std::vector<double> previous{2.0, 2.0};
    for (double alpha : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        spec.alpha = alpha;
        for (std::size_t r = 0; r < lam2s.size(); ++r) {
            const double bin = spec.decode_eigenvalue(spec.encode_eigenvalue(lam2s[r]));
            const double f = spec.amplitude(bin);
            CHECK(f < previous[r]);
            previous[r] = f;
        }
    }
}

TEST_CASE("tune selects the classical argmin on a separated fixture", "[alpha]") {
    TuneConfig cfg;
    cfg.pe.precision_bits = 10;
    cfg.pe.evolution_time = kDiagFixtureT0;
    AlphaGrid grid;
    grid.alpha_min = 0.05;
    grid.alpha_max = 1.0;
    grid.count = 6;
    const TuneOutcome out = tune(diag_fixture(), {1.0, 1.0}, grid, cfg);
    REQUIRE(out.results.size() == 6);
    for (const auto& r : out.results) CHECK(r.error.empty());
    CHECK(out.selected_alpha == out.classical_selected_alpha);
    CHECK(out.selected_alpha == 0.05);
}

TEST_CASE("tune handles singletons and near-ties", "[alpha]") {
    TuneConfig cfg;
    cfg.pe.precision_bits = 8;
    AlphaGrid single;
    single.alpha_min = 0.37;
    const TuneOutcome one = tune(diag_fixture(), {1.0, 1.0}, single, cfg);
    CHECK(one.selected_alpha == 0.37);

    // Two alphas whose losses coincide to 1e-12: the larger one wins.
    AlphaGrid tie;
    tie.alpha_min = 0.25;
    tie.alpha_max = 0.25 + 1e-13;
    tie.count = 2;
    const TuneOutcome tied = tune(diag_fixture(), {1.0, 1.0}, tie, cfg);
    CHECK(tied.selected_alpha == tie.alpha_max);
}

TEST_CASE("tune records per-candidate failures", "[alpha]") {
    // The last alpha is large enough to starve the post-selection while the
    // others stay healthy; selection proceeds over the healthy ones.
    TuneConfig cfg;
    cfg.pe.precision_bits = 8;
    AlphaGrid grid;
    grid.alpha_min = 0.1;
    grid.alpha_max = 1e9;
    grid.count = 3;
    const TuneOutcome out = tune(diag_fixture(), {1.0, 1.0}, grid, cfg);
    CHECK(out.results[0].error.empty());
    CHECK_FALSE(out.results[2].error.empty());
    CHECK(out.selected_alpha == 0.1);

    // All candidates starved: aggregate failure.
    RealMatrix x(2, 2);
    x(0, 0) = 1.0;
    x(1, 0) = 1.0;
    AlphaGrid g2;
    g2.alpha_min = 0.1;
    g2.alpha_max = 0.5;
    g2.count = 2;
    CHECK_THROWS_WITH(tune(x, {1.0, -1.0}, g2, cfg),
                      Catch::Matchers::ContainsSubstring("all alpha candidates failed"));
}

TEST_CASE("tune is deterministic across worker counts", "[alpha]") {
    TuneConfig serial;
    serial.pe.precision_bits = 8;
    serial.swap_test_shots = 500;
    serial.seed = 123;
    TuneConfig parallel = serial;
    parallel.jobs = 4;

    AlphaGrid grid;
    grid.alpha_min = 0.05;
    grid.alpha_max = 0.8;
    grid.count = 5;
    const TuneOutcome a = tune(diag_fixture(), {1.0, 1.0}, grid, serial);
    const TuneOutcome b = tune(diag_fixture(), {1.0, 1.0}, grid, parallel);
    REQUIRE(a.results.size() == b.results.size());
    for (std::size_t j = 0; j < a.results.size(); ++j) {
        CHECK(a.results[j].loss == b.results[j].loss);
        CHECK(a.results[j].p2 == b.results[j].p2);
    }
    CHECK(a.selected_alpha == b.selected_alpha);
}

TEST_CASE("quantum and classical loss curves agree on random instances", "[alpha]") {
    std::mt19937_64 gen(503);
    std::uniform_real_distribution<double> lam_dist(0.15, 1.0);
    TuneConfig cfg;
    cfg.pe.precision_bits = 10;

    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t m = trial % 2 == 0 ? 4 : 8;
        RealVector lams{1.0, lam_dist(gen), lam_dist(gen)};
        const RealMatrix x = testing::matrix_with_spectrum(m, 4, lams, gen);
        const RealVector y = testing::random_unit_vector(m, gen);
        const SVDResult sv = svd(x);
        const double bound = 5.0 * sv.condition_number * sv.condition_number / 1024.0;

        AlphaGrid grid;
        grid.alpha_min = 0.05;
        grid.alpha_max = 0.6;
        grid.count = 4;
        const TuneOutcome out = tune(x, y, grid, cfg);
        for (const auto& r : out.results) {
            REQUIRE(r.error.empty());
            const double classical = classical_loss(sv, y, r.alpha);
            CHECK(std::abs(r.loss - classical) <= bound);
        }
        // Selection agreement whenever the classical gaps are generous.
        std::vector<double> classical_losses;
        for (const auto& r : out.results)
            classical_losses.push_back(classical_loss(sv, y, r.alpha));
        std::vector<double> sorted = classical_losses;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[1] - sorted[0] > 2.0 * bound)
            CHECK(out.selected_alpha == out.classical_selected_alpha);
    }
}
