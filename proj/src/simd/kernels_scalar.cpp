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

#include "covdecon/simd/kernels.hpp"

#include <algorithm>

namespace covdecon::simd::detail
{
    namespace
    {
        double dot_scalar(const double *a, const double *b, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                s += a[i] * b[i];
            return s;
        }

        void gemv_scalar(const double *A, std::size_t rows, std::size_t cols, const double *x, double *y)
        {
            for (std::size_t r = 0; r < rows; ++r)
                y[r] = dot_scalar(A + r * cols, x, cols);
        }

        void gemv_t_scalar(const double *A, std::size_t rows, std::size_t cols, const double *x, double *y)
        {
            std::fill(y, y + cols, 0.0);
            for (std::size_t r = 0; r < rows; ++r)
            {
                const double xr = x[r];
                const double *row = A + r * cols;
                for (std::size_t c = 0; c < cols; ++c)
                    y[c] += xr * row[c];
            }
        }

        void weighted_gram_scalar(const double *W, std::size_t rows, std::size_t cols, const double *w, double *G)
        {
            std::fill(G, G + cols * cols, 0.0);
            for (std::size_t k = 0; k < rows; ++k)
            {
                const double *row = W + k * cols;
                for (std::size_t i = 0; i < cols; ++i)
                {
                    const double s = w[k] * row[i];
                    double *g = G + i * cols;
                    for (std::size_t j = i; j < cols; ++j)
                        g[j] += s * row[j];
                }
            }
            for (std::size_t i = 0; i < cols; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    G[i * cols + j] = G[j * cols + i];
        }

        void outer_accumulate_scalar(const double *re, const double *im, std::size_t n, std::size_t count,
                                     double *acc_re, double *acc_im)
        {
            // upper triangle, mirrored at the end: (a + ib)(c - id) = (ac + bd) + i(bc - ad)
            for (std::size_t k = 0; k < count; ++k)
            {
                const double *yr = re + k * n;
                const double *yi = im + k * n;
                for (std::size_t i = 0; i < n; ++i)
                {
                    const double a = yr[i], b = yi[i];
                    double *pr = acc_re + i * n;
                    double *pi = acc_im + i * n;
                    for (std::size_t j = i; j < n; ++j)
                    {
                        pr[j] += a * yr[j] + b * yi[j];
                        pi[j] += b * yr[j] - a * yi[j];
                    }
                }
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j)
                {
                    acc_re[i * n + j] = acc_re[j * n + i];
                    acc_im[i * n + j] = -acc_im[j * n + i];
                }
        }
    }

    const KernelTable scalar_table{
        Isa::scalar,
        dot_scalar,
        gemv_scalar,
        gemv_t_scalar,
        weighted_gram_scalar,
        outer_accumulate_scalar,
    };
}
