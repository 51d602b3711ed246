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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   acceptance --cli path/to/covdecon --workdir dir [--only 1,3,5]

#include "covdecon/channel_sim.hpp"
#include "covdecon/decontaminate.hpp"
#include "covdecon/experiment.hpp"
#include "covdecon/spectrum.hpp"
#include "oracles.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace covdecon;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::ostringstream detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail << " [violated: " << what << "]";
            }
        }
    };

    int failures = 0;

    template <class F>
    void criterion(const std::string &id, const std::string &title, F &&body)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try
        {
            body(out);
        }
        catch (const std::exception &e)
        {
            out.pass = false;
            out.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!out.pass)
            ++failures;
        std::printf("%s criterion %s: %s |%s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(),
                    out.detail.str().c_str(), secs);
        std::fflush(stdout);
    }

    QuadratureRule rule_for(int N) { return QuadratureRule::gauss_legendre(default_quadrature_order(N)); }

    AngularPowerSpectrum random_mixture(std::mt19937_64 &rng, Interval centers)
    {
        std::uniform_real_distribution<double> phi(centers.lo, centers.hi), delta(0.02, 0.2), alpha(0.1, 1.0);
        std::vector<GaussianComponent> comps(1 + rng() % 4);
        for (auto &c : comps)
            c = {alpha(rng), phi(rng), delta(rng)};
        return AngularPowerSpectrum::gaussian_mixture(comps);
    }

    double rel_fro(const ComplexMatrix &a, const ComplexMatrix &b) { return (a - b).norm() / b.norm(); }

    // --------------------------------------------------------------------------------------------

    void operator_identities(Outcome &out)
    {
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> angle(angle_min, angle_max);
        std::normal_distribution<double> gauss;

        double kappa_err = 0.0;
        for (int i = 0; i < 100; ++i)
        {
            const ArrayConfig cfg = ArrayConfig::half_wavelength(1 + i % 32);
            const double t = angle(rng);
            kappa_err = std::max(kappa_err, std::abs(kernel(cfg, t, t) - 1.0));
        }
        out.detail << " max|kappa(t,t)-1|=" << kappa_err;
        out.require(kappa_err < 1e-10, "kappa(t,t)=1 within 1e-10");

        double adj_err = 0.0;
        for (int i = 0; i < 100; ++i)
        {
            const int N = 1 + i % 8;
            const ArrayConfig cfg = ArrayConfig::half_wavelength(N);
            const QuadratureRule q = rule_for(N);
            const auto rho = random_mixture(rng, {-1.3, 1.3});
            Vector x(cfg.vec_dim());
            for (auto &v : x)
                v = gauss(rng);
            const AngularFunction adj = apply_T_adjoint(cfg, x);
            const double lhs = apply_T(cfg, rho, q).dot(x);
            const double rhs = q.integrate([&](double t) { return rho(t) * adj(t); });
            adj_err = std::max(adj_err, std::abs(lhs - rhs));
        }
        out.detail << " adjoint residual=" << adj_err;
        out.require(adj_err < 1e-8, "adjoint residual < 1e-8");

        double ip_err = 0.0;
        for (int i = 0; i < 100; ++i)
        {
            const int N = 1 + i % 10;
            const ComplexMatrix A = oracle::random_complex(N, N, rng), B = oracle::random_complex(N, N, rng);
            ip_err = std::max(ip_err, std::abs(t_vec(A).dot(t_vec(B)) - (B.adjoint() * A).trace().real()));
        }
        out.detail << " t_vec inner-product err=" << ip_err;
        out.require(ip_err < 1e-10, "t_vec inner product within 1e-10");

        for (int N : {2, 4, 8})
        {
            const Matrix G = gram_matrix(ArrayConfig::half_wavelength(N), rule_for(N)).G();
            const double bessel = (G - oracle::bessel_gram(N)).cwiseAbs().maxCoeff();
            const double asym = (G - G.transpose()).cwiseAbs().maxCoeff();
            Eigen::SelfAdjointEigenSolver<Matrix> es(G, Eigen::EigenvaluesOnly);
            const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
            const int rank = numerical_rank(G, 1e-8);
            out.detail << " N=" << N << ":rank=" << rank << ",bessel=" << bessel;
            out.require(bessel < 1e-8, "G matches Bessel oracle within 1e-8 (N=" + std::to_string(N) + ")");
            out.require(asym == 0.0, "G symmetric");
            out.require(lmin >= -1e-12 * lmax, "G PSD");
            out.require(rank == 2 * N - 1, "rank 2N-1");
        }
    }

    void path_equality(Outcome &out)
    {
        std::mt19937_64 rng(202);
        std::uniform_real_distribution<double> u(angle_min, angle_max);
        double worst = 0.0;
        int instances = 0;
        for (int N : {4, 8, 16})
        {
            const ArrayConfig cfg = ArrayConfig::half_wavelength(N);
            const QuadratureRule q = rule_for(N);
            const GramMatrices g = gram_matrix(cfg, q);
            const int count = N == 16 ? 16 : 17;
            for (int i = 0; i < count; ++i, ++instances)
            {
                double a = u(rng), b = u(rng);
                if (a > b)
                    std::swap(a, b);
                const AngleSet S = AngleSet::interval(a, std::max(b, a + 0.05 < angle_max ? a + 0.05 : b));
                const Vector rd = apply_T(cfg, random_mixture(rng, {0.3, 1.2}), q) +
                                  apply_T(cfg, random_mixture(rng, {-1.0, 0.0}), q);
                const DecontaminationOperator A = build_operator(g, S, q);
                const AngularFunction rho = recover_spectrum(g, rd).as_function();
                const Vector path = apply_T(cfg, mask(rho, S), q);
                worst = std::max(worst, (A.apply(rd) - path).norm() / rd.norm());
            }
        }
        out.detail << " instances=" << instances << " max rel diff=" << worst;
        out.require(instances == 50, "50 instances");
        out.require(worst < 1e-6, "relative path difference < 1e-6");
    }

    void bessel_covariance(Outcome &out)
    {
        double worst = 0.0;
        for (int N : {2, 4, 8, 16})
        {
            const CovarianceView R = covariance_from_aps(ArrayConfig::half_wavelength(N),
                                                         AngularPowerSpectrum::indicator(AngleSet::full()),
                                                         rule_for(N));
            worst = std::max(worst, (R.matrix() - oracle::bessel_uniform_covariance(N)).cwiseAbs().maxCoeff());
        }
        out.detail << " max entry err=" << worst;
        out.require(worst < 1e-6, "entrywise within 1e-6");
    }

    void statistics(Outcome &out)
    {
        const int N = 8, L = 100000;
        const ArrayConfig cfg = ArrayConfig::half_wavelength(N);
        const QuadratureRule q = rule_for(N);
        const auto rho1 = AngularPowerSpectrum::gaussian_mixture({{0.5, 0.6, 0.08}, {0.5, 0.9, 0.05}});
        const auto rho2 = AngularPowerSpectrum::gaussian_mixture({{0.7, -0.5, 0.1}, {0.3, -0.8, 0.04}});
        const auto rho3 = AngularPowerSpectrum::gaussian_mixture({{1.0, 0.1, 0.3}});
        const CovarianceView R1 = covariance_from_aps(cfg, rho1, q);
        const CovarianceView R2 = covariance_from_aps(cfg, rho2, q);
        const CovarianceView R3 = covariance_from_aps(cfg, rho3, q);

        // E[y y^H] = sum_j R_j + sigma2 I
        const double sigma2 = 0.1;
        const ChannelBatch h1 = sample_channels(R1, L, 1), h2 = sample_channels(R2, L, 2);
        const RxRecord y = received_signal({{&h1, {}}, {&h2, {}}}, sigma2, 3);
        const ComplexMatrix expected = R1.matrix() + R2.matrix() + sigma2 * ComplexMatrix::Identity(N, N);
        const double cov_err = rel_fro(sample_covariance(y.y), expected);
        out.detail << " E[yy^H] rel err=" << cov_err;
        out.require(cov_err < 0.05, "E[yy^H] within 5%");

        // E|h_j^H h_l|^2 = <T rho_j, T rho_l>; the pair overlaps so the bound is informative
        const ChannelBatch hj = sample_channels(R1, L, 4), hl = sample_channels(R3, L, 5);
        const double power = interference_power(cfg, rho1, rho3, q);
        std::vector<double> mags(L);
        double acc = 0.0;
        for (int k = 0; k < L; ++k)
        {
            const double m2 = std::norm(hj.samples.sample(k).dot(hl.samples.sample(k)));
            mags[k] = std::sqrt(m2);
            acc += m2;
        }
        const double power_err = std::abs(acc / L - power) / power;
        out.detail << " E|h_j^H h_l|^2=" << acc / L << " vs " << power << " (rel " << power_err << ")";
        out.require(power_err < 0.05, "interference power within 5%");

        for (double eps : {0.1, 0.5, 1.0})
        {
            const double bound = chebyshev_bound(power, eps);
            const double p = std::min(bound, 1.0);
            const double sigma = std::sqrt(p * (1 - p) / L);
            int hits = 0;
            for (double m : mags)
                hits += m >= eps;
            const double freq = double(hits) / L;
            out.detail << " eps=" << eps << ":freq=" << freq << "<=bound=" << bound;
            out.require(freq <= p + 3 * sigma, "Chebyshev bound at eps=" + std::to_string(eps));
        }
    }

    void decontamination_quality(Outcome &out, const std::string &id, int which, const MseReport &report)
    {
        const auto &rows = report.rows;
        auto row = [&](int N) -> const MseRow &
        {
            for (const auto &r : rows)
                if (r.num_antennas == N)
                    return r;
            throw std::runtime_error("missing N=" + std::to_string(N));
        };
        (void)id;
        switch (which)
        {
        case 0:
            for (std::size_t i = 0; i < rows.size(); ++i)
            {
                out.detail << " N=" << rows[i].num_antennas << ":" << rows[i].mse_perfect;
                if (i > 0)
                    out.require(rows[i].mse_perfect <= rows[i - 1].mse_perfect, "nonincreasing at N=" +
                                                                                    std::to_string(rows[i].num_antennas));
            }
            break;
        case 1:
            out.detail << " perfect=" << row(64).mse_perfect << " estimate=" << row(64).mse_estimate;
            out.require(row(64).mse_perfect <= row(64).mse_estimate, "perfect <= estimate at N=64");
            break;
        case 2:
            out.detail << " estimate=" << row(64).mse_estimate << " baseline=" << row(64).mse_baseline
                       << " ratio=" << row(64).mse_estimate / row(64).mse_baseline;
            out.require(row(64).mse_estimate <= 2 * row(64).mse_baseline &&
                            row(64).mse_baseline <= 2 * row(64).mse_estimate,
                        "estimate within a factor of 2 of baseline at N=64");
            break;
        case 3:
            out.detail << " baseline N=8:" << row(8).mse_baseline << " N=64:" << row(64).mse_baseline;
            out.require(row(64).mse_baseline > row(8).mse_baseline, "baseline degrades from N=8 to N=64");
            break;
        }
    }

    void projection_suite(Outcome &out)
    {
        std::mt19937_64 rng(606);
        double fixed_err = 0.0;
        for (int i = 0; i < 50; ++i)
        {
            const ComplexMatrix T = oracle::random_psd_toeplitz(2 + i % 15, rng);
            fixed_err = std::max(fixed_err, (toeplitz_psd_project(T).projection.matrix() - T).cwiseAbs().maxCoeff());
        }
        out.detail << " fixed-point err=" << fixed_err;
        out.require(fixed_err < 1e-8, "fixed point within 1e-8");

        double worst_toeplitz = 0.0, worst_eig = 0.0;
        for (int i = 0; i < 50; ++i)
        {
            const int N = 1 + i % 16;
            const ComplexMatrix P = toeplitz_psd_project(oracle::random_complex(N, N, rng)).projection.matrix();
            for (long r = 1; r < N; ++r)
                for (long c = 1; c < N; ++c)
                    worst_toeplitz = std::max(worst_toeplitz, std::abs(P(r, c) - P(r - 1, c - 1)));
            worst_eig = std::min(worst_eig, oracle::min_eigenvalue(P));
        }
        out.detail << " toeplitz dev=" << worst_toeplitz << " min eig=" << worst_eig;
        out.require(worst_toeplitz < 1e-8 && worst_eig >= -1e-8, "output in the Toeplitz PSD set");

        ComplexMatrix D = ComplexMatrix::Zero(2, 2);
        D(0, 0) = 1.0;
        D(1, 1) = 3.0;
        const double diag_err =
            (toeplitz_psd_project(D).projection.matrix() - 2.0 * ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
        out.detail << " diag(1,3) err=" << diag_err;
        out.require(diag_err < 1e-12, "diag(1,3) -> diag(2,2) within 1e-12");
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream is(path, std::ios::binary);
        std::ostringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    void reproducibility(Outcome &out, const std::string &cli, const std::string &workdir)
    {
        const std::string config = workdir + "/repro_config.json";
        {
            std::ofstream os(config);
            os << R"({"antenna_counts": [8, 16], "runs": 20, "seed": 2024})" << '\n';
        }
        std::string outputs[2];
        for (int i = 0; i < 2; ++i)
        {
            const std::string path = workdir + "/repro_" + std::to_string(i) + ".csv";
            std::remove(path.c_str());
            const std::string cmd = "\"" + cli + "\" simulate --threads 1 --config \"" + config + "\" --out \"" + path +
                                    "\" 2>/dev/null";
            const int rc = std::system(cmd.c_str());
            out.require(rc == 0, "simulate run " + std::to_string(i) + " exit code 0");
            outputs[i] = slurp(path);
        }
        out.detail << " bytes=" << outputs[0].size();
        out.require(!outputs[0].empty(), "non-empty report");
        out.require(outputs[0] == outputs[1], "identical CSV bytes");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"covdecon acceptance criteria"};
    std::string cli, workdir = ".";
    std::vector<int> only;
    int runs = 200;
    app.add_option("--cli", cli, "path to the covdecon executable")->required();
    app.add_option("--workdir", workdir, "scratch directory");
    app.add_option("--only", only, "criteria to run (default: all)")->delimiter(',');
    app.add_option("--runs", runs, "Monte Carlo runs for criterion 5");
    CLI11_PARSE(app, argc, argv);

    const std::set<int> selected(only.begin(), only.end());
    auto enabled = [&](int id) { return selected.empty() || selected.count(id); };

    if (enabled(1))
        criterion("1", "operator identities", operator_identities);
    if (enabled(2))
        criterion("2", "operator equals the recover/mask/forward path", path_equality);
    if (enabled(3))
        criterion("3", "uniform-spectrum covariance matches the Bessel oracle", bessel_covariance);
    if (enabled(4))
        criterion("4", "second moments and Chebyshev bound (1e5 samples)", statistics);
    if (enabled(5))
    {
        ExperimentConfig cfg;
        cfg.runs = runs;
        MseReport report;
        criterion("5", "default protocol sweep N=8..64 (" + std::to_string(runs) + " runs)",
                  [&](Outcome &out)
                  {
                      report = run_experiment(cfg);
                      for (const auto &r : report.rows)
                          out.detail << " N=" << r.num_antennas << ":" << r.seconds << "s";
                  });
        const char *titles[] = {"(a) Proposed-perfect MSE nonincreasing in N",
                                "(b) Proposed-perfect <= Proposed-estimate at N=64",
                                "(c) Proposed-estimate within factor 2 of baseline at N=64",
                                "(d) baseline MSE at N=64 exceeds N=8"};
        const char *ids[] = {"5a", "5b", "5c", "5d"};
        for (int i = 0; i < 4; ++i)
            criterion(ids[i], titles[i], [&](Outcome &out) { decontamination_quality(out, ids[i], i, report); });
    }
    if (enabled(6))
        criterion("6", "Toeplitz PSD projection", projection_suite);
    if (enabled(7))
        criterion("7", "simulate is byte-reproducible single-threaded",
                  [&](Outcome &out) { reproducibility(out, cli, workdir); });

    std::printf("%d criterion line(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
