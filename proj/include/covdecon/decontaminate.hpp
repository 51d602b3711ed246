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

#include "covdecon/angle_set.hpp"
#include "covdecon/angular_function.hpp"
#include "covdecon/array_response.hpp"
#include "covdecon/linalg.hpp"
#include "covdecon/quadrature.hpp"
#include "covdecon/vectorize.hpp"

/*!SECTION
Covariance decontamination

Given the denoised covariance r_d = T(rho_1 + rho_int) and a set M_1 containing the
support of the desired user's spectrum, the estimate of T(rho_1) is

    1. rho~   = T^+(r_d) = sum_n alpha_n g_n,   G alpha = r_d (minimum norm)
    2. rho~_1 = 1_{M_1} rho~
    3. r~_1   = T(rho~_1)

which collapses to r~_1 = A r_d with A = G_{M_1} G^+. The operator is built once per
(array, M_1, cutoff) and reused for every covariance.
SECTION!*/

namespace covdecon
{
    // R - sigma2 I; throws DomainError for sigma2 < 0. The result is not forced PSD.
    CovarianceView denoise(const CovarianceView &R, double sigma2);

    struct SpectrumEstimate
    {
        ArrayConfig config;
        Vector coefficients; // alpha, 2N^2 entries

        // theta -> sum_n alpha_n g_n(theta)
        AngularFunction as_function() const;
    };

    // Minimum-norm solution of G alpha = r_d by truncated eigendecomposition of G
    SpectrumEstimate recover_spectrum(const GramMatrices &gram, const Vector &r_d);

    class DecontaminationOperator
    {
    public:
        // Reduced-form operator; gram must carry a masked Gram (GramMatrices::with_mask)
        explicit DecontaminationOperator(const GramMatrices &gram);

        // Operator given by an explicit 2N^2 x 2N^2 matrix
        static DecontaminationOperator from_dense(Matrix A, double svd_cutoff = 1e-10);

        int vec_dim() const { return dim_; }
        int num_antennas() const;
        double svd_cutoff() const { return cutoff_; }
        const std::optional<AngleSet> &support() const { return support_; }
        const std::optional<GramMatrices> &gram() const { return gram_; }
        bool is_dense() const { return dense_.has_value(); }

        // A r; throws DimensionError on length mismatch
        Vector apply(const Vector &r) const;

        // A as a dense 2N^2 x 2N^2 matrix
        Matrix matrix() const;

    private:
        DecontaminationOperator() = default;

        int dim_ = 0;
        double cutoff_ = 1e-10;
        std::optional<GramMatrices> gram_;
        std::optional<AngleSet> support_;

        // A = B diag(1/D) C diag(1/D) B^T in the reduced coordinates
        Matrix reduced_;
        Vector inv_norms_;

        std::optional<Matrix> dense_;
    };

    // A = G_masked * pinv(G, cutoff) from explicit matrices; throws ValidationError for
    // asymmetric inputs and DimensionError for mismatched sizes
    DecontaminationOperator build_operator(const Matrix &G, const Matrix &G_masked, double cutoff = 1e-10);

    // Reduced-form operator for the support set
    DecontaminationOperator build_operator(const GramMatrices &gram, const AngleSet &support,
                                           const QuadratureRule &quad);

    // un_vec(A r_d)
    CovarianceView estimate_covariance(const DecontaminationOperator &op, const Vector &r_d);

    struct ProjectionResult
    {
        CovarianceView projection;
        int iterations = 0;
        bool converged = false;
    };

    // (M + M^H) / 2 with every diagonal replaced by its mean
    ComplexMatrix project_toeplitz(const ComplexMatrix &M);

    // Hermitian part with negative eigenvalues clipped to zero
    ComplexMatrix project_psd(const ComplexMatrix &M);

    // Frobenius projection onto Hermitian PSD Toeplitz matrices by Dykstra's alternating
    // projections. Stops when the iterate changes by less than tol * max(1, ||M||_F) or after
    // max_iters sweeps; the result is always Toeplitz and PSD.
    ProjectionResult toeplitz_psd_project(const ComplexMatrix &M, int max_iters = 500, double tol = 1e-9);
}
