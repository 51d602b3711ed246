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

// Command line front end: Gram/operator export, quality and interference reports,
// single-covariance decontamination and the Monte Carlo sweep.

#include "covdecon/decontaminate.hpp"
#include "covdecon/errors.hpp"
#include "covdecon/experiment.hpp"
#include "covdecon/io.hpp"
#include "covdecon/simd/kernels.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using namespace covdecon;

namespace
{
    ExperimentConfig load_config(const std::string &path)
    {
        ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : config_from_json(io::read_json_file(path));
        for (const auto &w : cfg.warnings())
            std::cerr << "warning: " << w << '\n';
        return cfg;
    }

    int single_size(const ExperimentConfig &cfg, int override_n)
    {
        return override_n > 0 ? override_n : cfg.antenna_counts.front();
    }

    void write_text(const std::string &path, const std::string &text)
    {
        if (path.empty() || path == "-")
        {
            std::cout << text;
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw ConfigError("cannot open '" + path + "' for writing");
        os << text;
        if (!os)
            throw ConfigError("write to '" + path + "' failed");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"covdecon - channel covariance decontamination for ULA massive MIMO"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    int antennas = 0;

    auto *gram = app.add_subcommand("gram", "write the Gram matrix G (2N^2 x 2N^2) as CSV");
    gram->add_option("--config", config_path, "experiment configuration (JSON)")->check(CLI::ExistingFile);
    gram->add_option("--antennas,-N", antennas, "array size (default: first of antenna_counts)");
    gram->add_option("--out", out_path, "output CSV")->required();

    auto *op_cmd = app.add_subcommand("operator", "write the decontamination operator A for M_1 as CSV");
    op_cmd->add_option("--config", config_path, "experiment configuration (JSON)")->check(CLI::ExistingFile);
    op_cmd->add_option("--antennas,-N", antennas, "array size (default: first of antenna_counts)");
    op_cmd->add_option("--out", out_path, "output CSV")->required();

    auto *quality_cmd = app.add_subcommand("quality", "print Q(M_1, M_int) for every array size");
    quality_cmd->add_option("--config", config_path, "experiment configuration (JSON)")->check(CLI::ExistingFile);

    std::string aps1_path, aps2_path;
    std::vector<double> eps_values{0.1, 0.5, 1.0};
    auto *inter = app.add_subcommand("interference", "interference power and Chebyshev bounds for two spectra");
    inter->add_option("--aps1", aps1_path, "first spectrum (JSON)")->required()->check(CLI::ExistingFile);
    inter->add_option("--aps2", aps2_path, "second spectrum (JSON)")->required()->check(CLI::ExistingFile);
    inter->add_option("--config", config_path, "array parameters (JSON)")->check(CLI::ExistingFile);
    inter->add_option("--antennas,-N", antennas, "array size (default: first of antenna_counts)");
    inter->add_option("--eps", eps_values, "thresholds for the Chebyshev bound");

    std::string operator_path, rd_path;
    auto *estimate = app.add_subcommand("estimate", "apply a stored operator to a covariance");
    estimate->add_option("--operator", operator_path, "operator CSV")->required()->check(CLI::ExistingFile);
    estimate->add_option("--rd", rd_path, "contaminated covariance CSV")->required()->check(CLI::ExistingFile);
    estimate->add_option("--out", out_path, "output covariance CSV")->required();

    bool timing = false;
    int threads = 0;
    auto *simulate = app.add_subcommand("simulate", "run the Monte Carlo sweep and write the MSE report");
    simulate->add_option("--config", config_path, "experiment configuration (JSON)")->check(CLI::ExistingFile);
    simulate->add_option("--out", out_path, "report CSV ('-' for stdout)")->required();
    simulate->add_option("--threads", threads, "worker threads (default: COVDECON_THREADS or all cores)");
    simulate->add_flag("--timing", timing, "fill the seconds column with wall time");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*gram)
        {
            const ExperimentConfig cfg = load_config(config_path);
            const int N = single_size(cfg, antennas);
            const QuadratureRule quad = QuadratureRule::gauss_legendre(cfg.quadrature_order_for(N));
            io::write_matrix_csv(out_path, gram_matrix(cfg.array(N), quad, cfg.svd_cutoff).G());
        }
        else if (*op_cmd)
        {
            const ExperimentConfig cfg = load_config(config_path);
            const int N = single_size(cfg, antennas);
            const QuadratureRule quad = QuadratureRule::gauss_legendre(cfg.quadrature_order_for(N));
            const GramMatrices g = gram_matrix(cfg.array(N), quad, cfg.svd_cutoff);
            io::write_matrix_csv(out_path, build_operator(g, cfg.m1, quad).matrix());
        }
        else if (*quality_cmd)
        {
            const ExperimentConfig cfg = load_config(config_path);
            std::cout << "N,quality\n";
            for (const auto &row : report_quality(cfg))
                std::cout << row.num_antennas << ',' << io::format_double(row.quality) << '\n';
        }
        else if (*inter)
        {
            const ExperimentConfig cfg = load_config(config_path);
            const int N = single_size(cfg, antennas);
            const auto rho1 = io::aps_from_json(io::read_json_file(aps1_path));
            const auto rho2 = io::aps_from_json(io::read_json_file(aps2_path));
            const QuadratureRule quad = QuadratureRule::gauss_legendre(cfg.quadrature_order_for(N));
            const InterferenceReport rep = interference_report(cfg.array(N), rho1, rho2, eps_values, quad);
            nlohmann::json j;
            j["num_antennas"] = N;
            j["inner_product"] = rep.inner_product;
            j["quality_bound"] = rep.quality_bound;
            for (const auto &e : rep.chebyshev)
                j["chebyshev"].push_back({{"eps", e.eps}, {"bound", e.bound}});
            std::cout << j.dump(2) << '\n';
        }
        else if (*estimate)
        {
            Matrix A = io::read_matrix_csv(operator_path);
            const ComplexMatrix Rd = io::read_covariance_csv(rd_path);
            if (A.rows() != A.cols())
                throw DimensionError("operator must be square");
            const DecontaminationOperator op = DecontaminationOperator::from_dense(std::move(A));
            if (op.vec_dim() != 2 * Rd.rows() * Rd.rows())
                throw DimensionError("operator size " + std::to_string(op.vec_dim()) +
                                     " does not match a " + std::to_string(Rd.rows()) + "x" +
                                     std::to_string(Rd.rows()) + " covariance");
            io::write_covariance_csv(out_path, estimate_covariance(op, t_vec(Rd)).matrix());
        }
        else if (*simulate)
        {
            const ExperimentConfig cfg = load_config(config_path);
            RunOptions options;
            options.threads = threads;
            const auto start = std::chrono::steady_clock::now();
            const MseReport report = run_experiment(cfg, options);
            write_text(out_path, report_csv(report, timing));
            std::cerr << "simulate: " << report.rows.size() << " array sizes, " << cfg.runs << " runs, "
                      << simd::isa_name(simd::kernels().isa) << " kernels, "
                      << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                      << " s\n";
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
