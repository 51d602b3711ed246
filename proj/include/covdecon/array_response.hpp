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

#include <optional>
#include <span>
#include <vector>

#include "covdecon/angle_set.hpp"
#include "covdecon/angular_function.hpp"
#include "covdecon/linalg.hpp"
#include "covdecon/quadrature.hpp"

/*!SECTION
Uniform linear array response

The array maps an angular power spectrum rho on [-pi/2, pi/2] to the vectorized
covariance T(rho) in R^{2N^2}, component n being the integral of rho * g_n where
g(theta) = T_vec(a(theta) a(theta)^H). For a ULA the 2N^2 response functions are
copies (up to sign and the factor 1/N) of only 2N-1 distinct functions

    1, cos(beta*l*sin(theta)), sin(beta*l*sin(theta)),    l = 1..N-1

so every integral is carried out on that reduced basis and expanded afterwards.
ResponseBasis holds the expansion g(theta) = B phi(theta).
SECTION!*/

namespace covdecon
{
    struct ArrayConfig
    {
        int num_antennas = 1;
        double carrier_freq = 2.11e9; // Hz
        double wave_speed = 3.0e8;    // m/s
        double spacing = 3.0e8 / (2.0 * 2.11e9); // m

        static ArrayConfig half_wavelength(int num_antennas, double carrier_freq = 2.11e9, double wave_speed = 3.0e8);

        // beta = 2 pi (f / c) d
        double phase_constant() const;

        // 2 N^2
        int vec_dim() const { return 2 * num_antennas * num_antennas; }

        // Throws DomainError when a field is out of range
        void validate() const;
    };

    // Throws DomainError if theta is outside [-pi/2, pi/2]
    void check_angle(double theta);

    class ResponseBasis
    {
    public:
        explicit ResponseBasis(const ArrayConfig &cfg);

        const ArrayConfig &config() const { return cfg_; }
        int num_antennas() const { return cfg_.num_antennas; }
        int vec_dim() const { return cfg_.vec_dim(); }
        int size() const { return 2 * cfg_.num_antennas - 1; }

        // phi(theta) written to out (size() entries); no domain check
        void evaluate(double theta, std::span<double> out) const;
        Vector evaluate(double theta) const;

        // B c: reduced coefficients -> R^{2N^2}
        Vector expand(const Vector &reduced) const;
        // B^T x: R^{2N^2} -> reduced coefficients
        Vector contract(const Vector &x) const;
        // B M B^T
        Matrix expand(const Matrix &reduced) const;

        // Euclidean norms of the columns of B (all positive)
        const Vector &column_norms() const { return norms_; }

        // Basis index of component n, or -1 when g_n vanishes identically
        int index(int n) const { return index_[n]; }
        double coefficient(int n) const { return coeff_[n]; }

    private:
        ArrayConfig cfg_;
        double beta_;
        std::vector<int> index_;
        std::vector<double> coeff_;
        Vector norms_;
    };

    // Reduced basis sampled at the nodes of a rule: rows = nodes, cols = basis size
    class SampledResponse
    {
    public:
        SampledResponse(const ArrayConfig &cfg, const QuadratureRule &quad);

        const ResponseBasis &basis() const { return basis_; }
        const QuadratureRule &rule() const { return quad_; }
        const Matrix &samples() const { return samples_; }

        // integral of f * phi over the rule (size() entries). Falls back to a freshly split
        // rule when f has breakpoints inside the pieces.
        Vector integrate_reduced(const AngularFunction &f) const;

        // T(f) in R^{2N^2}
        Vector apply(const AngularFunction &f) const;

        // Reduced Gram matrix: integral of phi phi^T over the rule
        Matrix reduced_gram() const;

    private:
        ResponseBasis basis_;
        QuadratureRule quad_;
        Matrix samples_;
    };

    // Reduced Gram matrix over an arbitrary rule (used for masked integrals)
    Matrix reduced_gram(const ResponseBasis &basis, const QuadratureRule &quad);

    /*!MD
    # GramMatrices
    Gram matrix G_{n,m} = <g_n, g_m> and optionally its masked counterpart
    (G_S)_{n,m} = integral over S of g_n g_m, stored in reduced form.

    `G()` and `G_masked()` expand to the full 2N^2 x 2N^2 matrices on request.
    MD!*/
    struct GramMatrices
    {
        ArrayConfig config;
        ResponseBasis basis;
        Matrix reduced;
        std::optional<Matrix> reduced_masked;
        std::optional<AngleSet> mask;
        double svd_cutoff = 1e-10;
        int quadrature_order = 0;

        Matrix G() const;
        std::optional<Matrix> G_masked() const;

        // Copy with the masked Gram attached; S must have positive length
        GramMatrices with_mask(const AngleSet &set, const QuadratureRule &quad) const;
    };

    ComplexVector manifold(const ArrayConfig &cfg, double theta);

    // T_vec(a(theta) a(theta)^H)
    Vector response_functions(const ArrayConfig &cfg, double theta);

    // kappa(theta1, theta2) = sum_n g_n(theta1) g_n(theta2)
    double kernel(const ArrayConfig &cfg, double theta1, double theta2);

    Vector apply_T(const ArrayConfig &cfg, const AngularFunction &rho, const QuadratureRule &quad);

    // theta -> sum_n x_n g_n(theta); throws DimensionError if x.size() != 2N^2
    AngularFunction apply_T_adjoint(const ArrayConfig &cfg, const Vector &x);

    GramMatrices gram_matrix(const ArrayConfig &cfg, const QuadratureRule &quad, double svd_cutoff = 1e-10);

    // G = W^T diag(w) W with W the full 2N^2 response sampled at the nodes. Quadratic in
    // 2N^2, meant for small arrays and for cross-checking the reduced path.
    Matrix gram_matrix_direct(const ArrayConfig &cfg, const QuadratureRule &quad);

    // Full 2N^2 x 2N^2 masked Gram; throws DegenerateSetError if S has zero length
    Matrix masked_gram_matrix(const ArrayConfig &cfg, const AngleSet &set, const QuadratureRule &quad);
}
