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

#include "covdecon/array_response.hpp"
#include "covdecon/errors.hpp"
#include "covdecon/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace covdecon
{
    AngularFunction zero_function()
    {
        return {[](double)
                { return 0.0; },
                {}};
    }

    AngularFunction mask(const AngularFunction &f, const AngleSet &set)
    {
        AngularFunction out;
        out.eval = [f = f.eval, set](double theta)
        { return set.contains(theta) ? f(theta) : 0.0; };
        out.breakpoints = f.breakpoints;
        const auto ends = set.endpoints();
        out.breakpoints.insert(out.breakpoints.end(), ends.begin(), ends.end());
        return out;
    }

    ArrayConfig ArrayConfig::half_wavelength(int num_antennas, double carrier_freq, double wave_speed)
    {
        ArrayConfig cfg;
        cfg.num_antennas = num_antennas;
        cfg.carrier_freq = carrier_freq;
        cfg.wave_speed = wave_speed;
        cfg.spacing = wave_speed / (2.0 * carrier_freq);
        cfg.validate();
        return cfg;
    }

    double ArrayConfig::phase_constant() const
    {
        return 2.0 * pi * (carrier_freq / wave_speed) * spacing;
    }

    void ArrayConfig::validate() const
    {
        if (num_antennas < 1)
            throw DomainError("ArrayConfig: num_antennas must be >= 1");
        if (!(carrier_freq > 0.0) || !(wave_speed > 0.0) || !(spacing > 0.0))
            throw DomainError("ArrayConfig: carrier_freq, wave_speed and spacing must be positive");
        const double beta = phase_constant();
        if (!std::isfinite(beta) || !(beta > 0.0))
            throw DomainError("ArrayConfig: phase constant 2*pi*f*d/c must be finite and positive");
    }

    void check_angle(double theta)
    {
        if (!(theta >= angle_min && theta <= angle_max))
            throw DomainError("angle " + std::to_string(theta) + " outside [-pi/2, pi/2]");
    }

    // ---------------------------------------------------------------------------------------------

    ResponseBasis::ResponseBasis(const ArrayConfig &cfg) : cfg_(cfg)
    {
        cfg_.validate();
        beta_ = cfg_.phase_constant();
        const int N = cfg_.num_antennas;
        const int dim = vec_dim();
        index_.assign(dim, -1);
        coeff_.assign(dim, 0.0);

        // a_r conj(a_c) = exp(i beta (r - c) sin(theta)) / N
        for (int col = 0; col < N; ++col)
            for (int row = 0; row < N; ++row)
            {
                const int lag = row - col;
                const int re = col * N + row;
                const int im = N * N + col * N + row;
                index_[re] = lag == 0 ? 0 : 2 * std::abs(lag) - 1;
                coeff_[re] = 1.0 / N;
                if (lag != 0)
                {
                    index_[im] = 2 * std::abs(lag);
                    coeff_[im] = (lag > 0 ? 1.0 : -1.0) / N;
                }
            }

        norms_ = Vector::Zero(size());
        for (int n = 0; n < dim; ++n)
            if (index_[n] >= 0)
                norms_[index_[n]] += coeff_[n] * coeff_[n];
        norms_ = norms_.cwiseSqrt();
    }

    void ResponseBasis::evaluate(double theta, std::span<double> out) const
    {
        const double s = std::sin(theta);
        out[0] = 1.0;
        for (int l = 1; l < cfg_.num_antennas; ++l)
        {
            const double phase = beta_ * l * s;
            out[2 * l - 1] = std::cos(phase);
            out[2 * l] = std::sin(phase);
        }
    }

    Vector ResponseBasis::evaluate(double theta) const
    {
        Vector out(size());
        evaluate(theta, std::span<double>(out.data(), out.size()));
        return out;
    }

    Vector ResponseBasis::expand(const Vector &reduced) const
    {
        if (reduced.size() != size())
            throw DimensionError("ResponseBasis::expand: expected " + std::to_string(size()) + " coefficients");
        Vector out(vec_dim());
        for (int n = 0; n < vec_dim(); ++n)
            out[n] = index_[n] >= 0 ? coeff_[n] * reduced[index_[n]] : 0.0;
        return out;
    }

    Vector ResponseBasis::contract(const Vector &x) const
    {
        if (x.size() != vec_dim())
            throw DimensionError("ResponseBasis::contract: expected a vector of length " + std::to_string(vec_dim()));
        Vector out = Vector::Zero(size());
        for (int n = 0; n < vec_dim(); ++n)
            if (index_[n] >= 0)
                out[index_[n]] += coeff_[n] * x[n];
        return out;
    }

    Matrix ResponseBasis::expand(const Matrix &reduced) const
    {
        if (reduced.rows() != size() || reduced.cols() != size())
            throw DimensionError("ResponseBasis::expand: reduced matrix has the wrong size");
        const int dim = vec_dim();
        Matrix out = Matrix::Zero(dim, dim);
        for (int n = 0; n < dim; ++n)
        {
            if (index_[n] < 0)
                continue;
            for (int m = 0; m < dim; ++m)
                if (index_[m] >= 0)
                    out(n, m) = coeff_[n] * coeff_[m] * reduced(index_[n], index_[m]);
        }
        return out;
    }

    // ---------------------------------------------------------------------------------------------

    SampledResponse::SampledResponse(const ArrayConfig &cfg, const QuadratureRule &quad)
        : basis_(cfg), quad_(quad), samples_(quad.size(), basis_.size())
    {
        const auto nodes = quad_.nodes();
        for (std::size_t k = 0; k < nodes.size(); ++k)
            basis_.evaluate(nodes[k], std::span<double>(samples_.row(k).data(), basis_.size()));
    }

    Vector SampledResponse::integrate_reduced(const AngularFunction &f) const
    {
        bool inside = false;
        for (double b : f.breakpoints)
            for (const auto &piece : quad_.pieces())
                inside = inside || (b > piece.lo && b < piece.hi);

        if (inside)
        {
            const SampledResponse split(basis_.config(), quad_.split_at(f.breakpoints));
            return split.integrate_reduced(f);
        }

        const auto nodes = quad_.nodes();
        const auto weights = quad_.weights();
        Vector wf(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k)
            wf[k] = weights[k] * f(nodes[k]);

        Vector out(basis_.size());
        simd::kernels().gemv_t(samples_.data(), samples_.rows(), samples_.cols(), wf.data(), out.data());
        return out;
    }

    Vector SampledResponse::apply(const AngularFunction &f) const
    {
        return basis_.expand(integrate_reduced(f));
    }

    Matrix SampledResponse::reduced_gram() const
    {
        Matrix out(basis_.size(), basis_.size());
        simd::kernels().weighted_gram(samples_.data(), samples_.rows(), samples_.cols(), quad_.weights().data(),
                                      out.data());
        return out;
    }

    Matrix reduced_gram(const ResponseBasis &basis, const QuadratureRule &quad)
    {
        return SampledResponse(basis.config(), quad).reduced_gram();
    }

    // ---------------------------------------------------------------------------------------------

    Matrix GramMatrices::G() const
    {
        return basis.expand(reduced);
    }

    std::optional<Matrix> GramMatrices::G_masked() const
    {
        if (!reduced_masked)
            return std::nullopt;
        return basis.expand(*reduced_masked);
    }

    GramMatrices GramMatrices::with_mask(const AngleSet &set, const QuadratureRule &quad) const
    {
        if (!(set.total_length() > 0.0))
            throw DegenerateSetError("masked Gram matrix needs an angle set of positive length");
        GramMatrices out = *this;
        out.reduced_masked = reduced_gram(basis, QuadratureRule::composite(quad.order(), set));
        out.mask = set;
        return out;
    }

    // ---------------------------------------------------------------------------------------------

    ComplexVector manifold(const ArrayConfig &cfg, double theta)
    {
        cfg.validate();
        check_angle(theta);
        const int N = cfg.num_antennas;
        const double beta = cfg.phase_constant();
        const double s = std::sin(theta);
        const double scale = 1.0 / std::sqrt(static_cast<double>(N));
        ComplexVector a(N);
        for (int k = 0; k < N; ++k)
            a[k] = std::polar(scale, beta * k * s);
        return a;
    }

    Vector response_functions(const ArrayConfig &cfg, double theta)
    {
        const ComplexVector a = manifold(cfg, theta);
        const int N = cfg.num_antennas;
        Vector g(cfg.vec_dim());
        for (int col = 0; col < N; ++col)
            for (int row = 0; row < N; ++row)
            {
                const Complex v = a[row] * std::conj(a[col]);
                g[col * N + row] = v.real();
                g[N * N + col * N + row] = v.imag();
            }
        return g;
    }

    double kernel(const ArrayConfig &cfg, double theta1, double theta2)
    {
        const Vector g1 = response_functions(cfg, theta1);
        const Vector g2 = response_functions(cfg, theta2);
        return simd::kernels().dot(g1.data(), g2.data(), g1.size());
    }

    Vector apply_T(const ArrayConfig &cfg, const AngularFunction &rho, const QuadratureRule &quad)
    {
        return SampledResponse(cfg, quad.split_at(rho.breakpoints)).apply(rho);
    }

    AngularFunction apply_T_adjoint(const ArrayConfig &cfg, const Vector &x)
    {
        ResponseBasis basis(cfg);
        if (x.size() != basis.vec_dim())
            throw DimensionError("apply_T_adjoint: expected a vector of length " + std::to_string(basis.vec_dim()) +
                                 ", got " + std::to_string(x.size()));
        const Vector reduced = basis.contract(x);
        AngularFunction f;
        f.eval = [basis, reduced](double theta)
        {
            check_angle(theta);
            return basis.evaluate(theta).dot(reduced);
        };
        return f;
    }

    GramMatrices gram_matrix(const ArrayConfig &cfg, const QuadratureRule &quad, double svd_cutoff)
    {
        SampledResponse sampled(cfg, quad);
        return GramMatrices{cfg, sampled.basis(), sampled.reduced_gram(), std::nullopt, std::nullopt, svd_cutoff,
                            quad.order()};
    }

    Matrix gram_matrix_direct(const ArrayConfig &cfg, const QuadratureRule &quad)
    {
        const int dim = cfg.vec_dim();
        const auto nodes = quad.nodes();
        Matrix W(nodes.size(), dim);
        for (std::size_t k = 0; k < nodes.size(); ++k)
            W.row(k) = response_functions(cfg, nodes[k]).transpose();
        Matrix G(dim, dim);
        simd::kernels().weighted_gram(W.data(), W.rows(), W.cols(), quad.weights().data(), G.data());
        return G;
    }

    Matrix masked_gram_matrix(const ArrayConfig &cfg, const AngleSet &set, const QuadratureRule &quad)
    {
        if (!(set.total_length() > 0.0))
            throw DegenerateSetError("masked_gram_matrix: angle set has zero length");
        ResponseBasis basis(cfg);
        return basis.expand(reduced_gram(basis, QuadratureRule::composite(quad.order(), set)));
    }
}
