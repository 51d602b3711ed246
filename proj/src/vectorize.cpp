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

#include "covdecon/vectorize.hpp"
#include "covdecon/errors.hpp"

#include <cmath>
#include <string>

namespace covdecon
{
    Vector t_vec(const ComplexMatrix &M)
    {
        if (M.rows() != M.cols())
            throw DimensionError("t_vec: matrix must be square");
        const Eigen::Index N = M.rows();
        Vector x(2 * N * N);
        for (Eigen::Index col = 0; col < N; ++col)
            for (Eigen::Index row = 0; row < N; ++row)
            {
                x[col * N + row] = M(row, col).real();
                x[N * N + col * N + row] = M(row, col).imag();
            }
        return x;
    }

    int side_from_vec_length(Eigen::Index len)
    {
        if (len < 2 || len % 2 != 0)
            return -1;
        const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(len / 2))));
        return (n >= 1 && 2 * n * n == len) ? static_cast<int>(n) : -1;
    }

    ComplexMatrix un_vec(const Vector &x)
    {
        const int N = side_from_vec_length(x.size());
        if (N < 0)
            throw DimensionError("un_vec: length " + std::to_string(x.size()) + " is not of the form 2N^2");
        ComplexMatrix M(N, N);
        for (int col = 0; col < N; ++col)
            for (int row = 0; row < N; ++row)
                M(row, col) = Complex(x[col * N + row], x[N * N + col * N + row]);
        return M;
    }

    double inner_product_h1(const ComplexMatrix &M1, const ComplexMatrix &M2)
    {
        if (M1.rows() != M2.rows() || M1.cols() != M2.cols())
            throw DimensionError("inner_product_h1: size mismatch");
        return (M2.adjoint() * M1).trace().real();
    }

    CovarianceView::CovarianceView(ComplexMatrix matrix) : matrix_(std::move(matrix)), vec_(t_vec(matrix_)) {}

    CovarianceView CovarianceView::from_vec(const Vector &x)
    {
        return CovarianceView(un_vec(x));
    }

    bool CovarianceView::is_hermitian(double tol) const
    {
        return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    bool CovarianceView::is_psd(double rel_tol) const
    {
        if (matrix_.size() == 0)
            return true;
        if (!is_hermitian(1e-10 * std::max(1.0, matrix_.cwiseAbs().maxCoeff())))
            return false;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
        const Vector &ev = es.eigenvalues();
        const double scale = ev.cwiseAbs().maxCoeff();
        return ev.minCoeff() >= -rel_tol * scale;
    }
}
