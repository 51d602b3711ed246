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

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace covdecon
{
    using Complex = std::complex<double>;

    using Vector = Eigen::VectorXd;
    using ComplexVector = Eigen::VectorXcd;
    using ComplexMatrix = Eigen::MatrixXcd;

    // Row-major storage is what the SIMD kernels operate on.
    using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    inline constexpr double pi = std::numbers::pi;

    // Angle domain of a linear array scanning the half plane.
    inline constexpr double angle_min = -pi / 2.0;
    inline constexpr double angle_max = pi / 2.0;

    // Moore-Penrose pseudo-inverse of a symmetric matrix, dropping eigenvalues with
    // |lambda| <= rel_cutoff * max|lambda|.
    Matrix symmetric_pinv(const Matrix &S, double rel_cutoff);

    // Number of eigenvalues of a symmetric matrix above rel_tol * lambda_max.
    int numerical_rank(const Matrix &S, double rel_tol);
}
