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

#include <catch_amalgamated.hpp>

#include "covdecon/errors.hpp"
#include "covdecon/experiment.hpp"

#include <cmath>

using namespace covdecon;

namespace
{
    ExperimentConfig small_config()
    {
        ExperimentConfig cfg;
        cfg.antenna_counts = {4, 8};
        cfg.runs = 6;
        cfg.snapshots = 200;
        cfg.seed = 77;
        return cfg;
    }
}

TEST_CASE("random spectra follow the drawing protocol")
{
    Rng rng(1);
    const QuadratureRule q = QuadratureRule::gauss_legendre(200);
    for (int i = 0; i < 1000; ++i)
    {
        const auto rho = draw_aps(rng, {0.5, 1.0}, {1, 5}, {0.02, 0.08});
        const auto &c = rho.components();
        REQUIRE(c.size() >= 1);
        REQUIRE(c.size() <= 5);
        double sum = 0.0;
        for (const auto &k : c)
        {
            CHECK(k.phi >= 0.5);
            CHECK(k.phi <= 1.0);
            CHECK(k.delta >= 0.02);
            CHECK(k.delta <= 0.08);
            CHECK(k.alpha >= 0.0);
            sum += k.alpha;
        }
        CHECK(sum == Catch::Approx(1.0).margin(1e-12));
        const double mass = q.integrate([&](double t) { return rho(t); });
        CHECK(mass <= 1.0 + 1e-6);
        CHECK(mass >= 0.95);
    }
    const auto one = draw_aps(rng, {-1.0, -0.5}, {1, 1}, {0.02, 0.08});
    REQUIRE(one.components().size() == 1);
    CHECK(one.components()[0].alpha == 1.0);

    CHECK_THROWS_AS(draw_aps(rng, {1.0, 0.5}, {1, 5}, {0.02, 0.08}), ConfigError);
    CHECK_THROWS_AS(draw_aps(rng, {0.5, 1.0}, {3, 2}, {0.02, 0.08}), ConfigError);
}

TEST_CASE("normalized MSE")
{
    ComplexMatrix R(2, 2);
    R << Complex(2, 0), Complex(0.5, 0.1), Complex(0.5, -0.1), Complex(1, 0);
    const CovarianceView truth(R);
    CHECK(mse(truth, truth) == 0.0);
    CHECK(mse(CovarianceView(ComplexMatrix::Zero(2, 2)), truth) == Catch::Approx(1.0));
    CHECK(mse(CovarianceView(ComplexMatrix(2.0 * R)), truth) == Catch::Approx(1.0));
    CHECK_THROWS_AS(mse(truth, CovarianceView(ComplexMatrix::Zero(2, 2))), DomainError);
    CHECK_THROWS_AS(mse(truth, CovarianceView(ComplexMatrix::Identity(3, 3))), DimensionError);
}

TEST_CASE("configuration JSON")
{
    const auto j = nlohmann::json::parse(R"({
        "antenna_counts": [4, 16], "runs": 3, "snapshots": 50, "sigma2": 0.2,
        "M_1": [[0.2, 1.0]], "M_int": [-1.2, -0.1], "q_range": [2, 3], "seed": 9,
        "quadrature_order": 300, "d": 0.05
    })");
    const ExperimentConfig cfg = config_from_json(j);
    CHECK(cfg.antenna_counts == std::vector<int>{4, 16});
    CHECK(cfg.runs == 3);
    CHECK(cfg.sigma2 == 0.2);
    CHECK(cfg.m1 == AngleSet::interval(0.2, 1.0));
    CHECK(cfg.m_int == AngleSet::interval(-1.2, -0.1));
    CHECK(cfg.q_range == std::pair<int, int>{2, 3});
    CHECK(cfg.quadrature_order_for(16) == 300);
    CHECK(cfg.array(4).spacing == 0.05);

    const ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.antenna_counts == cfg.antenna_counts);
    CHECK(back.m1 == cfg.m1);
    CHECK(back.seed == cfg.seed);
    CHECK(back.d == cfg.d);

    const ExperimentConfig defaults = config_from_json(nlohmann::json::object());
    CHECK(defaults.runs == 1000);
    CHECK(defaults.snapshots == 1000);
    CHECK(defaults.sigma2 == 0.1);
    CHECK(defaults.antenna_counts == std::vector<int>{8, 16, 32, 64});
    CHECK(defaults.array(8).spacing == Catch::Approx(3e8 / (2 * 2.11e9)));
    CHECK(defaults.quadrature_order_for(8) == default_quadrature_order(8));
    CHECK(defaults.warnings().empty());
}

TEST_CASE("invalid configurations")
{
    using nlohmann::json;
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"runs": 0})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"snapshots": 0})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"sigma2": -1})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"antenna_counts": []})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"runs": "many"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"M_1": [[0.5, 3.0]]})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"desired_center_range": [1.0, 0.5]})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"unknown_key": 1})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse("[1, 2]")), ConfigError);
}

TEST_CASE("overlapping supports only warn")
{
    ExperimentConfig cfg;
    cfg.m_int = AngleSet::interval(0.0, 0.5);
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.warnings().size() == 1);
}

TEST_CASE("experiment is reproducible and thread-count independent")
{
    const ExperimentConfig cfg = small_config();
    RunOptions one;
    one.threads = 1;
    const MseReport a = run_experiment(cfg, one);
    const MseReport b = run_experiment(cfg, one);
    CHECK(report_csv(a, false) == report_csv(b, false));

    RunOptions three;
    three.threads = 3;
    const MseReport c = run_experiment(cfg, three);
    REQUIRE(c.rows.size() == a.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        CHECK(std::abs(a.rows[i].mse_perfect - c.rows[i].mse_perfect) <= 1e-12);
        CHECK(std::abs(a.rows[i].mse_estimate - c.rows[i].mse_estimate) <= 1e-12);
        CHECK(std::abs(a.rows[i].mse_baseline - c.rows[i].mse_baseline) <= 1e-12);
    }

    ExperimentConfig other = cfg;
    other.seed = 78;
    CHECK(report_csv(run_experiment(other, one), false) != report_csv(a, false));
}

TEST_CASE("report rows are finite and nonnegative")
{
    const MseReport r = run_experiment(small_config(), {1, {}});
    REQUIRE(r.rows.size() == 2);
    for (const auto &row : r.rows)
    {
        for (double v : {row.mse_perfect, row.mse_estimate, row.mse_baseline, row.quality})
        {
            CHECK(std::isfinite(v));
            CHECK(v >= 0.0);
        }
        CHECK(row.runs == 6);
    }
    const std::string csv = report_csv(r, false);
    CHECK(csv.rfind("N,mse_perfect,mse_estimate,mse_baseline,quality,runs,seconds\n", 0) == 0);
    CHECK(csv.find(",6,0\n") != std::string::npos);
}

TEST_CASE("full mask with a single user is exact")
{
    ExperimentConfig cfg = small_config();
    cfg.antenna_counts = {2, 4, 8};
    cfg.m1 = AngleSet::full();
    cfg.interferer_power = 0.0;
    cfg.runs = 3;
    for (const auto &row : run_experiment(cfg, {1, {}}).rows)
        CHECK(row.mse_perfect < 1e-10);
}

TEST_CASE("many snapshots bring the estimate to the perfect-knowledge operator")
{
    ExperimentConfig cfg = small_config();
    cfg.antenna_counts = {8};
    cfg.interferer_power = 0.0;
    cfg.sigma2 = 0.0;
    cfg.snapshots = 100000;
    cfg.runs = 3;
    const MseRow row = run_experiment(cfg, {1, {}}).rows.front();
    CHECK(row.mse_estimate == Catch::Approx(row.mse_perfect).epsilon(0.10));
}

TEST_CASE("quality table")
{
    ExperimentConfig cfg;
    cfg.antenna_counts = {8, 64};
    const auto rows = report_quality(cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].quality < rows[0].quality);

    ExperimentConfig same = cfg;
    same.m_int = same.m1;
    CHECK(report_quality(same)[0].quality > 0.0);

    ExperimentConfig swapped = cfg;
    std::swap(swapped.m1, swapped.m_int);
    CHECK(report_quality(swapped)[0].quality == Catch::Approx(rows[0].quality).epsilon(1e-12));
}

TEST_CASE("run errors carry their position")
{
    const RunError e(16, 3, "boom");
    CHECK(e.num_antennas == 16);
    CHECK(e.run == 3);
    CHECK(std::string(e.what()).find("boom") != std::string::npos);
}
