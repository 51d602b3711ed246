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
#include "covdecon/simd/kernels.hpp"

#include <cmath>
#include <string>

namespace covdecon
{
    namespace
    {
        void require_symmetric(const Matrix &S, const char *what)
        {
            const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
            if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
                throw ValidationError(std::string(what) + " is not symmetric");
        }

        // D^{-1} B^T x, the coordinates of x in the orthonormal basis U = B D^{-1}
        Vector to_reduced(const ResponseBasis &basis, const Vector &inv_norms, const Vector &x)
        {
            return basis.contract(x).cwiseProduct(inv_norms);
        }

        Vector from_reduced(const ResponseBasis &basis, const Vector &inv_norms, const Vector &z)
        {
            return basis.expand(Vector(z.cwiseProduct(inv_norms)));
        }

        // K = D M D for a reduced Gram M
        Matrix scale_reduced(const Matrix &M, const Vector &norms)
        {
            return norms.asDiagonal() * M * norms.asDiagonal();
        }
    }

    CovarianceView denoise(const CovarianceView &R, double sigma2)
    {
        if (!(sigma2 >= 0.0))
            throw DomainError("denoise: noise variance must be nonnegative");
        ComplexMatrix M = R.matrix();
        M.diagonal().array() -= sigma2;
        return CovarianceView(std::move(M));
    }

    AngularFunction SpectrumEstimate::as_function() const
    {
        ResponseBasis basis(config);
        const Vector reduced = basis.contract(coefficients);
        return {[basis, reduced](double theta)
                { return basis.evaluate(theta).dot(reduced); },
                {}};
    }

    SpectrumEstimate recover_spectrum(const GramMatrices &gram, const Vector &r_d)
    {
        if (r_d.size() != gram.basis.vec_dim())
            throw DimensionError("recover_spectrum: expected r_d of length " + std::to_string(gram.basis.vec_dim()) +
                                 ", got " + std::to_string(r_d.size()));
        // G = U K U^T with U = B D^{-1} orthonormal, so G^+ = U K^+ U^T
        const Vector &norms = gram.basis.column_norms();
        const Vector inv_norms = norms.cwiseInverse();
        const Matrix K_pinv = symmetric_pinv(scale_reduced(gram.reduced, norms), gram.svd_cutoff);
        const Vector z = K_pinv * to_reduced(gram.basis, inv_norms, r_d);
        return {gram.config, from_reduced(gram.basis, inv_norms, z)};
    }

    // ---------------------------------------------------------------------------------------------

    DecontaminationOperator::DecontaminationOperator(const GramMatrices &gram)
    {
        if (!gram.reduced_masked || !gram.mask)
            throw ValidationError("DecontaminationOperator: Gram matrices carry no masked Gram");
        dim_ = gram.basis.vec_dim();
        cutoff_ = gram.svd_cutoff;
        gram_ = gram;
        support_ = gram.mask;

        const Vector &norms = gram.basis.column_norms();
        inv_norms_ = norms.cwiseInverse();
        const Matrix K_pinv = symmetric_pinv(scale_reduced(gram.reduced, norms), cutoff_);
        reduced_ = scale_reduced(*gram.reduced_masked, norms) * K_pinv;
    }

    DecontaminationOperator DecontaminationOperator::from_dense(Matrix A, double svd_cutoff)
    {
        if (A.rows() != A.cols() || side_from_vec_length(A.rows()) < 0)
            throw DimensionError("DecontaminationOperator: matrix must be 2N^2 x 2N^2");
        DecontaminationOperator op;
        op.dim_ = static_cast<int>(A.rows());
        op.cutoff_ = svd_cutoff;
        op.dense_ = std::move(A);
        return op;
    }

    int DecontaminationOperator::num_antennas() const
    {
        return side_from_vec_length(dim_);
    }

    Vector DecontaminationOperator::apply(const Vector &r) const
    {
        if (r.size() != dim_)
            throw DimensionError("DecontaminationOperator::apply: expected a vector of length " +
                                 std::to_string(dim_) + ", got " + std::to_string(r.size()));
        if (dense_)
        {
            Vector out(dim_);
            simd::kernels().gemv(dense_->data(), dense_->rows(), dense_->cols(), r.data(), out.data());
            return out;
        }
        const ResponseBasis &basis = gram_->basis;
        return from_reduced(basis, inv_norms_, reduced_ * to_reduced(basis, inv_norms_, r));
    }

    Matrix DecontaminationOperator::matrix() const
    {
        if (dense_)
            return *dense_;
        return gram_->basis.expand(Matrix(inv_norms_.asDiagonal() * reduced_ * inv_norms_.asDiagonal()));
    }

    DecontaminationOperator build_operator(const Matrix &G, const Matrix &G_masked, double cutoff)
    {
        if (G.rows() != G.cols() || G_masked.rows() != G.rows() || G_masked.cols() != G.cols())
            throw DimensionError("build_operator: G and G_masked must be square and of equal size");
        require_symmetric(G, "G");
        require_symmetric(G_masked, "G_masked");
        return DecontaminationOperator::from_dense(G_masked * symmetric_pinv(G, cutoff), cutoff);
    }

    DecontaminationOperator build_operator(const GramMatrices &gram, const AngleSet &support,
                                           const QuadratureRule &quad)
    {
        return DecontaminationOperator(gram.with_mask(support, quad));
    }

    CovarianceView estimate_covariance(const DecontaminationOperator &op, const Vector &r_d)
    {
        return CovarianceView::from_vec(op.apply(r_d));
    }
}
