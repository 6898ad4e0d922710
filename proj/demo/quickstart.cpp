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

// Minimal library walkthrough: fit a tiny ridge problem with the quantum
// pipelines and check the results against the closed-form solution.

#include <cstdio>

#include "qridge/qridge.hpp"

int main() {
    using namespace qridge;

    RealMatrix x(2, 2);
    x(0, 0) = 1.0;
    x(1, 1) = 0.5;
    const RealVector y{1.0, 1.0};
    const RealVector x_new{1.0, 1.0};
    const double alpha = 0.25;

    // Classical oracle.
    const SVDResult sv = svd(x);
    const double classical = ridge_predict(ridge_weights(sv, y, alpha), x_new);

    // Quantum prediction pipeline. The evolution time is tuned so the two
    // normalized squared singular values (0.8 and 0.2) are exact clock
    // values, which makes phase estimation exact.
    PredictConfig cfg;
    cfg.pe.precision_bits = 10;
    cfg.pe.evolution_time = kPi / 1.6;
    const PredictOutcome outcome = predict(x, y, x_new, alpha, cfg);
    std::printf("prediction: quantum %.10f vs classical %.10f (p1 = %.4f)\n", outcome.y_prime,
                classical, outcome.p1);

    // Hyperparameter selection over a small linear grid.
    AlphaGrid grid;
    grid.alpha_min = 0.05;
    grid.alpha_max = 1.0;
    grid.count = 8;
    TuneConfig tcfg;
    tcfg.pe = cfg.pe;
    const TuneOutcome tuned = tune(x, y, grid, tcfg);
    std::printf("selected alpha: quantum %.4f vs classical %.4f\n", tuned.selected_alpha,
                tuned.classical_selected_alpha);
    for (const auto& r : tuned.results)
        std::printf("  alpha %.4f  loss %.6f  p2 %.4f\n", r.alpha, r.loss, r.p2);
    return 0;
}
