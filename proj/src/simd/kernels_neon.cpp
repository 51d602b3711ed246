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

#include <arm_neon.h>
#include <algorithm>

namespace covdecon::simd::detail
{
    namespace
    {
        double dot_neon(const double *a, const double *b, std::size_t n)
        {
            float64x2_t acc0 = vdupq_n_f64(0.0);
            float64x2_t acc1 = vdupq_n_f64(0.0);
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
            {
                acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
                acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
            }
            double s = vaddvq_f64(vaddq_f64(acc0, acc1));
            for (; i < n; ++i)
                s += a[i] * b[i];
            return s;
        }

        void gemv_neon(const double *A, std::size_t rows, std::size_t cols, const double *x, double *y)
        {
            for (std::size_t r = 0; r < rows; ++r)
                y[r] = dot_neon(A + r * cols, x, cols);
        }

        inline void axpy(double s, const double *x, double *y, std::size_t n)
        {
            const float64x2_t vs = vdupq_n_f64(s);
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2)
                vst1q_f64(y + j, vfmaq_f64(vld1q_f64(y + j), vs, vld1q_f64(x + j)));
            for (; j < n; ++j)
                y[j] += s * x[j];
        }

        void gemv_t_neon(const double *A, std::size_t rows, std::size_t cols, const double *x, double *y)
        {
            std::fill(y, y + cols, 0.0);
            for (std::size_t r = 0; r < rows; ++r)
                axpy(x[r], A + r * cols, y, cols);
        }

        void weighted_gram_neon(const double *W, std::size_t rows, std::size_t cols, const double *w, double *G)
        {
            std::fill(G, G + cols * cols, 0.0);
            for (std::size_t k = 0; k < rows; ++k)
            {
                const double *row = W + k * cols;
                for (std::size_t i = 0; i < cols; ++i)
                    axpy(w[k] * row[i], row + i, G + i * cols + i, cols - i);
            }
            for (std::size_t i = 0; i < cols; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    G[i * cols + j] = G[j * cols + i];
        }

        void outer_accumulate_neon(const double *re, const double *im, std::size_t n, std::size_t count,
                                   double *acc_re, double *acc_im)
        {
            for (std::size_t k = 0; k < count; ++k)
            {
                const double *yr = re + k * n;
                const double *yi = im + k * n;
                for (std::size_t i = 0; i < n; ++i)
                {
                    const float64x2_t va = vdupq_n_f64(yr[i]);
                    const float64x2_t vb = vdupq_n_f64(yi[i]);
                    double *pr = acc_re + i * n;
                    double *pi = acc_im + i * n;
                    std::size_t j = i;
                    for (; j + 2 <= n; j += 2)
                    {
                        const float64x2_t cr = vld1q_f64(yr + j);
                        const float64x2_t ci = vld1q_f64(yi + j);
                        float64x2_t r = vfmaq_f64(vld1q_f64(pr + j), va, cr);
                        r = vfmaq_f64(r, vb, ci);
                        float64x2_t m = vfmaq_f64(vld1q_f64(pi + j), vb, cr);
                        m = vfmsq_f64(m, va, ci);
                        vst1q_f64(pr + j, r);
                        vst1q_f64(pi + j, m);
                    }
                    for (; j < n; ++j)
                    {
                        pr[j] += yr[i] * yr[j] + yi[i] * yi[j];
                        pi[j] += yi[i] * yr[j] - yr[i] * yi[j];
                    }
                }
            }
            for (std::size_t i = 0; i < n; ++i)
            {
                acc_im[i * n + i] = 0.0;
                for (std::size_t j = 0; j < i; ++j)
                {
                    acc_re[i * n + j] = acc_re[j * n + i];
                    acc_im[i * n + j] = -acc_im[j * n + i];
                }
            }
        }
    }

    const KernelTable neon_table{
        Isa::neon,
        dot_neon,
        gemv_neon,
        gemv_t_neon,
        weighted_gram_neon,
        outer_accumulate_neon,
    };
}
