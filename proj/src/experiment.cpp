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

#include "covdecon/experiment.hpp"
#include "covdecon/decontaminate.hpp"
#include "covdecon/errors.hpp"
#include "covdecon/io.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace covdecon
{
    namespace
    {
        using json = nlohmann::json;

        Interval interval_from_json(const json &j, const char *key)
        {
            if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
                throw ConfigError(std::string(key) + ": expected [lo, hi]");
            return {j[0].get<double>(), j[1].get<double>()};
        }

        void check_range(Interval r, const char *name, bool inside_domain)
        {
            if (!(r.lo <= r.hi))
                throw ConfigError(std::string(name) + " is empty");
            if (inside_domain && (r.lo < angle_min || r.hi > angle_max))
                throw ConfigError(std::string(name) + " leaves [-pi/2, pi/2]");
        }

        // Everything that depends on the array size only
        struct SizeContext
        {
            ArrayConfig cfg;
            SampledResponse sampled;
            DecontaminationOperator op;
            double quality;
        };

        SizeContext make_context(const ExperimentConfig &config, int N)
        {
            const ArrayConfig cfg = config.array(N);
            const QuadratureRule quad = QuadratureRule::gauss_legendre(config.quadrature_order_for(N));
            SampledResponse sampled(cfg, quad);
            GramMatrices gram{cfg, sampled.basis(), sampled.reduced_gram(), std::nullopt, std::nullopt,
                              config.svd_cutoff, quad.order()};
            DecontaminationOperator op = build_operator(gram, config.m1, quad);
            const double q = quality(cfg, config.m1, config.m_int, quad);
            return {cfg, std::move(sampled), std::move(op), q};
        }

        AngularPowerSpectrum scaled(const AngularPowerSpectrum &rho, double factor)
        {
            if (factor == 0.0)
                return AngularPowerSpectrum::zero();
            auto comps = rho.components();
            for (auto &c : comps)
                c.alpha *= factor;
            return AngularPowerSpectrum::gaussian_mixture(std::move(comps));
        }

        struct RunResult
        {
            double perfect = 0.0;
            double estimate = 0.0;
            double baseline = 0.0;
        };

        RunResult single_run(const ExperimentConfig &config, const SizeContext &ctx, int run)
        {
            const int N = ctx.cfg.num_antennas;
            const int L = config.snapshots;

            // spectra depend on the run only, so all array sizes see the same draws
            Rng aps_rng(derive_seed(config.seed, {static_cast<std::uint64_t>(run), 0x5350ULL}));
            const AngularPowerSpectrum rho1 =
                draw_aps(aps_rng, config.desired_center_range, config.q_range, config.spread_range);
            std::vector<AngularPowerSpectrum> interferers;
            const int groups = config.per_user_interferers ? config.num_interferers : 1;
            for (int j = 0; j < groups; ++j)
                interferers.push_back(
                    scaled(draw_aps(aps_rng, config.interferer_center_range, config.q_range, config.spread_range),
                           config.interferer_power));

            const CovarianceView R1 = covariance_from_aps(ctx.sampled, rho1);
            std::vector<CovarianceView> R_int;
            ComplexMatrix Rd = R1.matrix();
            for (const auto &rho : interferers)
            {
                R_int.push_back(covariance_from_aps(ctx.sampled, rho));
                Rd += R_int.back().matrix();
            }

            RunResult out;
            out.perfect = mse(estimate_covariance(ctx.op, t_vec(Rd)), R1);

            const auto key = [&](std::uint64_t stream)
            { return derive_seed(config.seed, {static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(run), stream}); };

            const ChannelBatch h1 = sample_channels(R1, L, key(1));
            std::vector<ChannelBatch> h_int;
            for (std::size_t j = 0; j < R_int.size(); ++j)
                if (config.interferer_power > 0.0)
                    h_int.push_back(sample_channels(R_int[j], L, key(2 + j)));

            std::vector<UserSignal> users{{&h1, {}}};
            for (const auto &b : h_int)
                users.push_back({&b, {}});
            const RxRecord rx = received_signal(users, config.sigma2, key(0x4e4f495345ULL));

            const CovarianceView Rd_hat = estimated_rd(rx, config.projection_max_iters, config.projection_tol);
            out.estimate = mse(estimate_covariance(ctx.op, Rd_hat.vec()), R1);
            out.baseline =
                mse(baseline_estimator(h1.samples, config.projection_max_iters, config.projection_tol), R1);
            return out;
        }
    }

    // ---------------------------------------------------------------------------------------------

    ArrayConfig ExperimentConfig::array(int num_antennas) const
    {
        ArrayConfig cfg;
        cfg.num_antennas = num_antennas;
        cfg.carrier_freq = f;
        cfg.wave_speed = c;
        cfg.spacing = d.value_or(c / (2.0 * f));
        cfg.validate();
        return cfg;
    }

    int ExperimentConfig::quadrature_order_for(int num_antennas) const
    {
        return quadrature_order.value_or(default_quadrature_order(num_antennas));
    }

    void ExperimentConfig::validate() const
    {
        if (antenna_counts.empty())
            throw ConfigError("antenna_counts is empty");
        for (int N : antenna_counts)
            if (N < 1)
                throw ConfigError("antenna_counts entries must be >= 1");
        if (runs < 1)
            throw ConfigError("runs must be >= 1");
        if (snapshots < 1)
            throw ConfigError("snapshots must be >= 1");
        if (!(sigma2 >= 0.0))
            throw ConfigError("sigma2 must be >= 0");
        check_range(desired_center_range, "desired_center_range", true);
        check_range(interferer_center_range, "interferer_center_range", true);
        check_range(spread_range, "spread_range", false);
        if (!(spread_range.lo > 0.0))
            throw ConfigError("spread_range must be positive");
        if (q_range.first < 1 || q_range.first > q_range.second)
            throw ConfigError("q_range must satisfy 1 <= lo <= hi");
        if (!(f > 0.0) || !(c > 0.0) || (d && !(*d > 0.0)))
            throw ConfigError("f, c and d must be positive");
        if (quadrature_order && *quadrature_order < 1)
            throw ConfigError("quadrature_order must be >= 1");
        if (!(m1.total_length() > 0.0))
            throw ConfigError("M_1 must have positive length");
        if (!(interferer_power >= 0.0))
            throw ConfigError("interferer_power must be >= 0");
        if (num_interferers < 1)
            throw ConfigError("num_interferers must be >= 1");
        if (projection_max_iters < 1 || !(projection_tol > 0.0))
            throw ConfigError("projection_max_iters and projection_tol must be positive");
        if (!(svd_cutoff >= 0.0))
            throw ConfigError("svd_cutoff must be >= 0");
    }

    std::vector<std::string> ExperimentConfig::warnings() const
    {
        std::vector<std::string> out;
        if (m1.intersect(m_int).total_length() > 0.0)
            out.push_back("M_1 and M_int overlap; the decontamination assumes separated supports");
        return out;
    }

    ExperimentConfig config_from_json(const json &j)
    {
        if (!j.is_object())
            throw ConfigError("configuration must be a JSON object");
        static const std::set<std::string> known{
            "antenna_counts", "num_antennas", "runs", "snapshots", "sigma2", "M_1", "m1", "M_int", "m_int",
            "desired_center_range", "interferer_center_range", "q_range", "spread_range", "f", "c", "d", "seed",
            "quadrature_order", "svd_cutoff", "interferer_power", "per_user_interferers", "num_interferers",
            "projection_max_iters", "projection_tol"};
        for (const auto &[key, value] : j.items())
            if (!known.count(key))
                throw ConfigError("unknown configuration key '" + key + "'");

        ExperimentConfig cfg;
        try
        {
            if (j.contains("antenna_counts"))
                cfg.antenna_counts = j["antenna_counts"].get<std::vector<int>>();
            if (j.contains("num_antennas"))
                cfg.antenna_counts = {j["num_antennas"].get<int>()};
            if (j.contains("runs"))
                cfg.runs = j["runs"].get<int>();
            if (j.contains("snapshots"))
                cfg.snapshots = j["snapshots"].get<int>();
            if (j.contains("sigma2"))
                cfg.sigma2 = j["sigma2"].get<double>();
            for (const char *k : {"M_1", "m1"})
                if (j.contains(k))
                    cfg.m1 = io::angle_set_from_json(j[k]);
            for (const char *k : {"M_int", "m_int"})
                if (j.contains(k))
                    cfg.m_int = io::angle_set_from_json(j[k]);
            if (j.contains("desired_center_range"))
                cfg.desired_center_range = interval_from_json(j["desired_center_range"], "desired_center_range");
            if (j.contains("interferer_center_range"))
                cfg.interferer_center_range =
                    interval_from_json(j["interferer_center_range"], "interferer_center_range");
            if (j.contains("q_range"))
            {
                const auto &q = j["q_range"];
                if (!q.is_array() || q.size() != 2)
                    throw ConfigError("q_range: expected [lo, hi]");
                cfg.q_range = {q[0].get<int>(), q[1].get<int>()};
            }
            if (j.contains("spread_range"))
                cfg.spread_range = interval_from_json(j["spread_range"], "spread_range");
            if (j.contains("f"))
                cfg.f = j["f"].get<double>();
            if (j.contains("c"))
                cfg.c = j["c"].get<double>();
            if (j.contains("d"))
                cfg.d = j["d"].get<double>();
            if (j.contains("seed"))
                cfg.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("quadrature_order"))
                cfg.quadrature_order = j["quadrature_order"].get<int>();
            if (j.contains("svd_cutoff"))
                cfg.svd_cutoff = j["svd_cutoff"].get<double>();
            if (j.contains("interferer_power"))
                cfg.interferer_power = j["interferer_power"].get<double>();
            if (j.contains("per_user_interferers"))
                cfg.per_user_interferers = j["per_user_interferers"].get<bool>();
            if (j.contains("num_interferers"))
                cfg.num_interferers = j["num_interferers"].get<int>();
            if (j.contains("projection_max_iters"))
                cfg.projection_max_iters = j["projection_max_iters"].get<int>();
            if (j.contains("projection_tol"))
                cfg.projection_tol = j["projection_tol"].get<double>();
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("configuration: ") + e.what());
        }
        catch (const DomainError &e)
        {
            throw ConfigError(std::string("configuration: ") + e.what());
        }
        cfg.validate();
        return cfg;
    }

    json config_to_json(const ExperimentConfig &cfg)
    {
        json j;
        j["antenna_counts"] = cfg.antenna_counts;
        j["runs"] = cfg.runs;
        j["snapshots"] = cfg.snapshots;
        j["sigma2"] = cfg.sigma2;
        j["M_1"] = io::angle_set_to_json(cfg.m1);
        j["M_int"] = io::angle_set_to_json(cfg.m_int);
        j["desired_center_range"] = {cfg.desired_center_range.lo, cfg.desired_center_range.hi};
        j["interferer_center_range"] = {cfg.interferer_center_range.lo, cfg.interferer_center_range.hi};
        j["q_range"] = {cfg.q_range.first, cfg.q_range.second};
        j["spread_range"] = {cfg.spread_range.lo, cfg.spread_range.hi};
        j["f"] = cfg.f;
        j["c"] = cfg.c;
        if (cfg.d)
            j["d"] = *cfg.d;
        j["seed"] = cfg.seed;
        if (cfg.quadrature_order)
            j["quadrature_order"] = *cfg.quadrature_order;
        j["svd_cutoff"] = cfg.svd_cutoff;
        j["interferer_power"] = cfg.interferer_power;
        j["per_user_interferers"] = cfg.per_user_interferers;
        j["num_interferers"] = cfg.num_interferers;
        j["projection_max_iters"] = cfg.projection_max_iters;
        j["projection_tol"] = cfg.projection_tol;
        return j;
    }

    AngularPowerSpectrum draw_aps(Rng &rng, Interval center_range, std::pair<int, int> q_range, Interval spread_range)
    {
        if (!(center_range.lo <= center_range.hi) || !(spread_range.lo <= spread_range.hi) ||
            q_range.first > q_range.second)
            throw ConfigError("draw_aps: empty range");
        if (q_range.first < 1 || !(spread_range.lo > 0.0))
            throw ConfigError("draw_aps: need at least one component and positive spreads");

        const int Q = std::uniform_int_distribution<int>(q_range.first, q_range.second)(rng);
        std::uniform_real_distribution<double> center(center_range.lo, center_range.hi);
        std::uniform_real_distribution<double> weight(0.0, 1.0);
        std::uniform_real_distribution<double> spread(spread_range.lo, spread_range.hi);

        std::vector<GaussianComponent> comps(Q);
        double total = 0.0;
        for (auto &c : comps)
        {
            c.phi = center(rng);
            c.alpha = weight(rng);
            c.delta = spread(rng);
            total += c.alpha;
        }
        for (auto &c : comps)
            c.alpha = total > 0.0 ? c.alpha / total : 1.0 / Q;
        return AngularPowerSpectrum::gaussian_mixture(std::move(comps));
    }

    double mse(const CovarianceView &estimate, const CovarianceView &truth)
    {
        if (estimate.dim() != truth.dim())
            throw DimensionError("mse: size mismatch");
        const double denom = truth.matrix().squaredNorm();
        if (!(denom > 0.0))
            throw DomainError("mse: reference covariance is zero");
        return (estimate.matrix() - truth.matrix()).squaredNorm() / denom;
    }

    RunError::RunError(int n, int r, const std::string &what)
        : std::runtime_error("N=" + std::to_string(n) + " run " + std::to_string(r) + ": " + what),
          num_antennas(n), run(r)
    {
    }

    int thread_count_from_env()
    {
        if (const char *env = std::getenv("COVDECON_THREADS"))
        {
            const int n = std::atoi(env);
            if (n >= 1)
                return n;
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    MseReport run_experiment(const ExperimentConfig &config, const RunOptions &options)
    {
        config.validate();
        const int threads = std::max(1, options.threads > 0 ? options.threads : thread_count_from_env());

        MseReport report;
        for (int N : config.antenna_counts)
        {
            const auto start = std::chrono::steady_clock::now();
            const SizeContext ctx = make_context(config, N);

            std::vector<RunResult> results(config.runs);
            std::atomic<int> next{0};
            std::atomic<int> done{0};
            std::mutex error_mutex;
            std::exception_ptr error;

            auto worker = [&]()
            {
                for (int run = next++; run < config.runs; run = next++)
                {
                    try
                    {
                        results[run] = single_run(config, ctx, run);
                    }
                    catch (const std::exception &e)
                    {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::make_exception_ptr(RunError(N, run, e.what()));
                        next = config.runs;
                        return;
                    }
                    const int d = ++done;
                    if (options.progress)
                    {
                        std::lock_guard lock(error_mutex);
                        options.progress(N, d);
                    }
                }
            };

            if (threads == 1)
                worker();
            else
            {
                std::vector<std::jthread> pool;
                for (int t = 0; t < std::min(threads, config.runs); ++t)
                    pool.emplace_back(worker);
            }
            if (error)
                std::rethrow_exception(error);

            MseRow row;
            row.num_antennas = N;
            row.quality = ctx.quality;
            row.runs = config.runs;
            for (const auto &r : results)
            {
                row.mse_perfect += r.perfect;
                row.mse_estimate += r.estimate;
                row.mse_baseline += r.baseline;
            }
            row.mse_perfect /= config.runs;
            row.mse_estimate /= config.runs;
            row.mse_baseline /= config.runs;
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            report.rows.push_back(row);
        }
        return report;
    }

    std::vector<QualityRow> report_quality(const ExperimentConfig &config)
    {
        config.validate();
        std::vector<QualityRow> out;
        for (int N : config.antenna_counts)
        {
            const QuadratureRule quad = QuadratureRule::gauss_legendre(config.quadrature_order_for(N));
            out.push_back({N, quality(config.array(N), config.m1, config.m_int, quad)});
        }
        return out;
    }

    std::string report_csv(const MseReport &report, bool include_timing)
    {
        std::ostringstream os;
        os << "N,mse_perfect,mse_estimate,mse_baseline,quality,runs,seconds\n";
        for (const auto &r : report.rows)
            os << r.num_antennas << ',' << io::format_double(r.mse_perfect) << ','
               << io::format_double(r.mse_estimate) << ',' << io::format_double(r.mse_baseline) << ','
               << io::format_double(r.quality) << ',' << r.runs << ','
               << (include_timing ? io::format_double(r.seconds) : std::string("0")) << '\n';
        return os.str();
    }
}
