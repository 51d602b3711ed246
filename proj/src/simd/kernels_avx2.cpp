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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "covdecon/simd/kernels.hpp"

#include <immintrin.h>
#include <algorithm>

namespace covdecon::simd::detail
{
    namespace
    {
        inline double hsum(__m256d v)
        {
            __m128d lo = _mm256_castpd256_pd128(v);
            __m128d hi = _mm256_extractf128_pd(v, 1);
            lo = _mm_add_pd(lo, hi);
            __m128d sh = _mm_unpackhi_pd(lo, lo);
            return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
        }

        double dot_avx2(const double *a, const double *b, std::size_t n)
        {
            __m256d acc0 = _mm256_setzero_pd();
            __m256d acc1 = _mm256_setzero_pd();
            std::size_t i = 0;
            for (; i + 8 <= n; i += 8)
            {
                acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
                acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
            }
            for (; i + 4 <= n; i += 4)
                acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
            double s = hsum(_mm256_add_pd(acc0, acc1));
            for (; i < n; ++i)
                s += a[i] * b[i];
            return s;
        }

        void gemv_avx2(const double *A, std::size_t rows, std::size_t cols, const double *x, double *y)
        {
            for (std::size_t r = 0; r < rows; ++r)
                y[r] = dot_avx2(A + r * cols, x, cols);
        }

        // y[0..n) += s * x[0..n)
        inline void axpy(double s, const double *x, double *y, std::size_t n)
        {
            const __m256d vs = _mm256_set1_pd(s);
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4)
                _mm256_storeu_pd(y + j, _mm256_fmadd_pd(vs, _mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j)));
            for (; j < n; ++j)
                y[j] += s * x[j];
        }

        void gemv_t_avx2(const double *A, std::size_t rows, std::size_t cols, const double *x, double *y)
        {
            std::fill(y, y + cols, 0.0);
            for (std::size_t r = 0; r < rows; ++r)
                axpy(x[r], A + r * cols, y, cols);
        }

        void weighted_gram_avx2(const double *W, std::size_t rows, std::size_t cols, const double *w, double *G)
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

        void outer_accumulate_avx2(const double *re, const double *im, std::size_t n, std::size_t count,
                                   double *acc_re, double *acc_im)
        {
            for (std::size_t k = 0; k < count; ++k)
            {
                const double *yr = re + k * n;
                const double *yi = im + k * n;
                for (std::size_t i = 0; i < n; ++i)
                {
                    const double a = yr[i], b = yi[i];
                    const __m256d va = _mm256_set1_pd(a);
                    const __m256d vb = _mm256_set1_pd(b);
                    double *pr = acc_re + i * n;
                    double *pi = acc_im + i * n;
                    std::size_t j = i;
                    for (; j + 4 <= n; j += 4)
                    {
                        const __m256d cr = _mm256_loadu_pd(yr + j);
                        const __m256d ci = _mm256_loadu_pd(yi + j);
                        __m256d r = _mm256_loadu_pd(pr + j);
                        __m256d m = _mm256_loadu_pd(pi + j);
                        r = _mm256_fmadd_pd(va, cr, r);
                        r = _mm256_fmadd_pd(vb, ci, r);
                        m = _mm256_fmadd_pd(vb, cr, m);
                        m = _mm256_fnmadd_pd(va, ci, m);
                        _mm256_storeu_pd(pr + j, r);
                        _mm256_storeu_pd(pi + j, m);
                    }
                    for (; j < n; ++j)
                    {
                        pr[j] += a * yr[j] + b * yi[j];
                        pi[j] += b * yr[j] - a * yi[j];
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

    const KernelTable avx2_table{
        Isa::avx2,
        dot_avx2,
        gemv_avx2,
        gemv_t_avx2,
        weighted_gram_avx2,
        outer_accumulate_avx2,
    };
}
