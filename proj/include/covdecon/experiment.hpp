// SPDX-License-Identifier: Apache-2.0
//
// covdecon - channel covariance decontamination for massive MIMO arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "covdecon/angle_set.hpp"
#include "covdecon/array_response.hpp"
#include "covdecon/channel_sim.hpp"
#include "covdecon/spectrum.hpp"
#include "covdecon/vectorize.hpp"

/*!SECTION
Monte Carlo experiment

For every array size and run: draw the desired spectrum rho_1 and the combined
interferer spectrum rho_int, synthesize R_1 and R_int, and compare three estimates of
R_1 by normalized MSE ||R~_1 - R_1||_F^2 / ||R_1||_F^2:

  * perfect:  A applied to the exact T_vec(R_1 + R_int)
  * estimate: A applied to the Toeplitz/PSD projection of the denoised sample covariance
              of L received snapshots
  * baseline: Toeplitz/PSD projection of the sample covariance of L clean channels of user 1

Spectra depend only on (seed, run), so every array size sees the same draws. Per-run
results are reduced in run order, which makes the report independent of the thread count.
SECTION!*/

namespace covdecon
{
    struct ExperimentConfig
    {
        std::vector<int> antenna_counts{8, 16, 32, 64};
        int runs = 1000;
        int snapshots = 1000;
        double sigma2 = 0.1;
        AngleSet m1 = AngleSet::interval(0.3, 1.2);
        AngleSet m_int = AngleSet::interval(-1.0, 0.0);
        Interval desired_center_range{0.5, 1.0};
        Interval interferer_center_range{-1.0, -0.5};
        std::pair<int, int> q_range{1, 5};
        Interval spread_range{0.02, 0.08};
        double f = 2.11e9;
        double c = 3.0e8;
        std::optional<double> d; // defaults to c / (2 f)
        std::uint64_t seed = 1;
        std::optional<int> quadrature_order;
        double svd_cutoff = 1e-10;

        // Scales the interferer spectrum; 0 simulates the desired user alone
        double interferer_power = 1.0;
        // Simulate each interferer as its own user instead of one combined spectrum
        bool per_user_interferers = false;
        int num_interferers = 1;

        int projection_max_iters = 500;
        double projection_tol = 1e-9;

        ArrayConfig array(int num_antennas) const;
        int quadrature_order_for(int num_antennas) const;

        // Throws ConfigError
        void validate() const;
        // Non-fatal issues (overlapping supports, ...)
        std::vector<std::string> warnings() const;
    };

    ExperimentConfig config_from_json(const nlohmann::json &j);
    nlohmann::json config_to_json(const ExperimentConfig &cfg);

    // Q ~ U{q_range}, phi_k ~ U(center_range), alpha_k ~ U[0, 1] normalized to sum 1,
    // delta_k ~ U(spread_range). Throws ConfigError for empty ranges.
    AngularPowerSpectrum draw_aps(Rng &rng, Interval center_range, std::pair<int, int> q_range, Interval spread_range);

    // ||estimate - truth||_F^2 / ||truth||_F^2; throws DomainError for a zero truth
    double mse(const CovarianceView &estimate, const CovarianceView &truth);

    struct MseRow
    {
        int num_antennas = 0;
        double mse_perfect = 0.0;
        double mse_estimate = 0.0;
        double mse_baseline = 0.0;
        double quality = 0.0;
        int runs = 0;
        double seconds = 0.0;
    };

    struct MseReport
    {
        std::vector<MseRow> rows;
    };

    struct RunOptions
    {
        // 0: COVDECON_THREADS if set, otherwise the hardware concurrency
        int threads = 0;
        std::function<void(int num_antennas, int runs_done)> progress;
    };

    // Error raised inside a run, tagged with its position in the sweep
    struct RunError : std::runtime_error
    {
        RunError(int num_antennas, int run, const std::string &what);
        int num_antennas;
        int run;
    };

    MseReport run_experiment(const ExperimentConfig &config, const RunOptions &options = {});

    struct QualityRow
    {
        int num_antennas = 0;
        double quality = 0.0;
    };

    // Q(M_1, M_int) for every array size
    std::vector<QualityRow> report_quality(const ExperimentConfig &config);

    // Columns N,mse_perfect,mse_estimate,mse_baseline,quality,runs,seconds.
    // Without timing the seconds column is 0 so identical runs give identical bytes.
    std::string report_csv(const MseReport &report, bool include_timing);

    int thread_count_from_env();
}
