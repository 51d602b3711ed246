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

#include "covdecon/linalg.hpp"

namespace covdecon
{
    // T_vec: index col*N + row holds Re(M)(row, col), index N^2 + col*N + row holds Im(M)(row, col).
    // Throws DimensionError for non-square input.
    Vector t_vec(const ComplexMatrix &M);

    // Inverse of t_vec; throws DimensionError unless x.size() == 2 N^2 for some N >= 1
    ComplexMatrix un_vec(const Vector &x);

    // N with 2 N^2 == len, or -1
    int side_from_vec_length(Eigen::Index len);

    // Re tr(M2^H M1)
    double inner_product_h1(const ComplexMatrix &M1, const ComplexMatrix &M2);

    /*!MD
    # CovarianceView
    Complex N x N matrix together with its vectorization; both views are kept in sync.
    MD!*/
    class CovarianceView
    {
    public:
        CovarianceView() = default;
        explicit CovarianceView(ComplexMatrix matrix);
        static CovarianceView from_vec(const Vector &x);

        const ComplexMatrix &matrix() const { return matrix_; }
        const Vector &vec() const { return vec_; }
        int dim() const { return static_cast<int>(matrix_.rows()); }

        bool is_hermitian(double tol = 1e-10) const;
        // Hermitian and min eigenvalue >= -rel_tol * max(|eigenvalue|)
        bool is_psd(double rel_tol = 1e-8) const;

    private:
        ComplexMatrix matrix_;
        Vector vec_;
    };
}
