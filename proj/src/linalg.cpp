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

#include "covdecon/linalg.hpp"
#include "covdecon/errors.hpp"

namespace covdecon
{
    Matrix symmetric_pinv(const Matrix &S, double rel_cutoff)
    {
        if (S.rows() != S.cols())
            throw DimensionError("symmetric_pinv: matrix must be square");
        if (S.size() == 0)
            return S;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
        const Vector &ev = es.eigenvalues();
        const Eigen::MatrixXd &V = es.eigenvectors();
        const double threshold = rel_cutoff * ev.cwiseAbs().maxCoeff();
        Vector inv(ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            inv[i] = std::abs(ev[i]) > threshold && ev[i] != 0.0 ? 1.0 / ev[i] : 0.0;
        return V * inv.asDiagonal() * V.transpose();
    }

    int numerical_rank(const Matrix &S, double rel_tol)
    {
        if (S.size() == 0)
            return 0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
        const Vector &ev = es.eigenvalues();
        const double threshold = rel_tol * ev.cwiseAbs().maxCoeff();
        int rank = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            rank += ev[i] > threshold ? 1 : 0;
        return rank;
    }
}
