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

#include "covdecon/io.hpp"
#include "covdecon/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace covdecon::io
{
    namespace
    {
        std::vector<std::vector<double>> read_rows(std::istream &is)
        {
            std::vector<std::vector<double>> rows;
            std::string line;
            int lineno = 0;
            while (std::getline(is, line))
            {
                ++lineno;
                if (!line.empty() && line.back() == '\r')
                    line.pop_back();
                if (line.find_first_not_of(" \t") == std::string::npos)
                    continue;
                std::vector<double> row;
                std::stringstream ss(line);
                std::string cell;
                while (std::getline(ss, cell, ','))
                {
                    try
                    {
                        std::size_t used = 0;
                        row.push_back(std::stod(cell, &used));
                        if (cell.find_first_not_of(" \t", used) != std::string::npos)
                            throw std::invalid_argument(cell);
                    }
                    catch (const std::exception &)
                    {
                        throw ConfigError("CSV line " + std::to_string(lineno) + ": cannot parse '" + cell + "'");
                    }
                }
                if (!rows.empty() && row.size() != rows.front().size())
                    throw ConfigError("CSV line " + std::to_string(lineno) + ": ragged row");
                rows.push_back(std::move(row));
            }
            return rows;
        }

        std::ofstream open_out(const std::string &path)
        {
            std::ofstream os(path);
            if (!os)
                throw ConfigError("cannot open '" + path + "' for writing");
            return os;
        }

        std::ifstream open_in(const std::string &path)
        {
            std::ifstream is(path);
            if (!is)
                throw ConfigError("cannot open '" + path + "'");
            return is;
        }
    }

    std::string format_double(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    void write_matrix_csv(std::ostream &os, const Matrix &M)
    {
        std::string line;
        for (Eigen::Index r = 0; r < M.rows(); ++r)
        {
            line.clear();
            for (Eigen::Index c = 0; c < M.cols(); ++c)
            {
                if (c)
                    line += ',';
                line += format_double(M(r, c));
            }
            line += '\n';
            os << line;
        }
    }

    Matrix read_matrix_csv(std::istream &is)
    {
        const auto rows = read_rows(is);
        if (rows.empty())
            return {};
        Matrix M(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                M(r, c) = rows[r][c];
        return M;
    }

    void write_covariance_csv(std::ostream &os, const ComplexMatrix &M)
    {
        for (Eigen::Index r = 0; r < M.rows(); ++r)
        {
            std::string line;
            for (Eigen::Index c = 0; c < M.cols(); ++c)
            {
                if (c)
                    line += ',';
                line += format_double(M(r, c).real());
                line += ',';
                line += format_double(M(r, c).imag());
            }
            line += '\n';
            os << line;
        }
    }

    ComplexMatrix read_covariance_csv(std::istream &is)
    {
        const auto rows = read_rows(is);
        const std::size_t N = rows.size();
        if (N == 0)
            throw DimensionError("covariance CSV is empty");
        if (rows.front().size() != 2 * N)
            throw DimensionError("covariance CSV must have N rows and 2N columns (got " + std::to_string(N) +
                                 " rows, " + std::to_string(rows.front().size()) + " columns)");
        ComplexMatrix M(N, N);
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c)
                M(r, c) = Complex(rows[r][2 * c], rows[r][2 * c + 1]);
        return M;
    }

    void write_matrix_csv(const std::string &path, const Matrix &M)
    {
        auto os = open_out(path);
        write_matrix_csv(os, M);
    }

    Matrix read_matrix_csv(const std::string &path)
    {
        auto is = open_in(path);
        return read_matrix_csv(is);
    }

    void write_covariance_csv(const std::string &path, const ComplexMatrix &M)
    {
        auto os = open_out(path);
        write_covariance_csv(os, M);
    }

    ComplexMatrix read_covariance_csv(const std::string &path)
    {
        auto is = open_in(path);
        return read_covariance_csv(is);
    }

    nlohmann::json angle_set_to_json(const AngleSet &set)
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &iv : set.intervals())
            arr.push_back({iv.lo, iv.hi});
        return arr;
    }

    AngleSet angle_set_from_json(const nlohmann::json &j)
    {
        if (!j.is_array())
            throw ConfigError("angle set must be an array of [lo, hi] pairs");
        // a bare [lo, hi] pair is accepted as a single interval
        if (j.size() == 2 && j[0].is_number() && j[1].is_number())
            return AngleSet::interval(j[0].get<double>(), j[1].get<double>());
        std::vector<Interval> ivs;
        for (const auto &p : j)
        {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw ConfigError("angle set entries must be [lo, hi] pairs");
            ivs.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        return AngleSet(std::move(ivs));
    }

    nlohmann::json aps_to_json(const AngularPowerSpectrum &rho)
    {
        using Kind = AngularPowerSpectrum::Kind;
        nlohmann::json j;
        auto components = [](const std::vector<GaussianComponent> &cs)
        {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto &c : cs)
                arr.push_back({{"alpha", c.alpha}, {"phi", c.phi}, {"delta", c.delta}});
            return arr;
        };
        switch (rho.kind())
        {
        case Kind::zero:
            j["kind"] = "zero";
            break;
        case Kind::gaussian_mixture:
            j["kind"] = "gaussian_mixture";
            j["components"] = components(rho.components());
            break;
        case Kind::indicator:
            j["kind"] = "indicator";
            j["intervals"] = angle_set_to_json(rho.set());
            break;
        case Kind::masked:
            j["kind"] = "masked";
            j["intervals"] = angle_set_to_json(rho.set());
            if (rho.base()->kind() == Kind::gaussian_mixture)
                j["components"] = components(rho.base()->components());
            else
                j["base"] = aps_to_json(*rho.base());
            break;
        }
        return j;
    }

    AngularPowerSpectrum aps_from_json(const nlohmann::json &j)
    {
        try
        {
            const std::string kind = j.at("kind").get<std::string>();
            auto components = [&]()
            {
                std::vector<GaussianComponent> cs;
                for (const auto &c : j.at("components"))
                    cs.push_back({c.at("alpha").get<double>(), c.at("phi").get<double>(), c.at("delta").get<double>()});
                return AngularPowerSpectrum::gaussian_mixture(std::move(cs));
            };
            if (kind == "zero")
                return AngularPowerSpectrum::zero();
            if (kind == "gaussian_mixture")
                return components();
            if (kind == "indicator")
                return AngularPowerSpectrum::indicator(angle_set_from_json(j.at("intervals")));
            if (kind == "masked")
            {
                const AngleSet set = angle_set_from_json(j.at("intervals"));
                if (j.contains("base"))
                    return AngularPowerSpectrum::masked(aps_from_json(j.at("base")), set);
                return AngularPowerSpectrum::masked(components(), set);
            }
            throw ConfigError("unknown spectrum kind '" + kind + "'");
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError(std::string("malformed spectrum JSON: ") + e.what());
        }
    }

    nlohmann::json read_json_file(const std::string &path)
    {
        auto is = open_in(path);
        try
        {
            return nlohmann::json::parse(is);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError("'" + path + "': " + e.what());
        }
    }
}
