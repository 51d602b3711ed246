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

#include "covdecon/decontaminate.hpp"
#include "covdecon/errors.hpp"

#include <algorithm>

namespace covdecon
{
    ComplexMatrix project_toeplitz(const ComplexMatrix &M)
    {
        if (M.rows() != M.cols())
            throw DimensionError("project_toeplitz: matrix must be square");
        const Eigen::Index N = M.rows();
        ComplexMatrix out(N, N);
        // lag k >= 0: entries (r + k, r) of the Hermitian part, whose mean also fixes lag -k
        for (Eigen::Index k = 0; k < N; ++k)
        {
            Complex s = 0.0;
            for (Eigen::Index r = 0; r + k < N; ++r)
                s += M(r + k, r) + std::conj(M(r, r + k));
            s /= 2.0 * static_cast<double>(N - k);
            if (k == 0)
                s = Complex(s.real(), 0.0);
            for (Eigen::Index r = 0; r + k < N; ++r)
            {
                out(r + k, r) = s;
                out(r, r + k) = std::conj(s);
            }
        }
        return out;
    }

    ComplexMatrix project_psd(const ComplexMatrix &M)
    {
        if (M.rows() != M.cols())
            throw DimensionError("project_psd: matrix must be square");
        const ComplexMatrix H = 0.5 * (M + M.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
        const Vector clipped = es.eigenvalues().cwiseMax(0.0);
        return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
    }

    ProjectionResult toeplitz_psd_project(const ComplexMatrix &M, int max_iters, double tol)
    {
        if (M.rows() != M.cols())
            throw DimensionError("toeplitz_psd_project: matrix must be square");
        const Eigen::Index N = M.rows();
        const double threshold = tol * std::max(1.0, M.norm());

        // Dykstra: the subspace step needs no correction term, the cone step does
        ComplexMatrix x = 0.5 * (M + M.adjoint());
        ComplexMatrix q = ComplexMatrix::Zero(N, N);
        ProjectionResult result;
        for (int it = 1; it <= max_iters; ++it)
        {
            const ComplexMatrix y = project_toeplitz(x);
            const ComplexMatrix x_next = project_psd(y + q);
            q = y + q - x_next;
            const double change = (x_next - x).norm();
            x = x_next;
            result.iterations = it;
            if (change < threshold)
            {
                result.converged = true;
                break;
            }
        }

        // Land exactly on the Toeplitz subspace, then lift the spectrum if rounding or an
        // unconverged iterate left it slightly negative
        ComplexMatrix out = project_toeplitz(x);
        if (N > 0)
        {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out, Eigen::EigenvaluesOnly);
            const double lambda_min = es.eigenvalues().minCoeff();
            if (lambda_min < 0.0)
                out.diagonal().array() += -lambda_min;
        }
        result.projection = CovarianceView(std::move(out));
        return result;
    }
}
