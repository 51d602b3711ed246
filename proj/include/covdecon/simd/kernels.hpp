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

#include <cstddef>
#include <string_view>
#include <vector>

/*!SECTION
Dense inner-loop kernels

The hot loops of the library are a handful of level-2 style operations on row-major
double arrays. Each has a scalar reference implementation and vectorized variants
(AVX2+FMA on x86-64, NEON on aarch64). A table is selected once at runtime from the
CPU capabilities; the environment variable COVDECON_SIMD=scalar|avx2|neon|auto
overrides the choice.

Vectorized variants reorder floating point sums, so they agree with the scalar
reference to rounding, not bit for bit.
SECTION!*/

namespace covdecon::simd
{
    enum class Isa
    {
        scalar,
        avx2,
        neon
    };

    struct KernelTable
    {
        Isa isa;

        // sum_i a[i] * b[i]
        double (*dot)(const double *a, const double *b, std::size_t n);

        // y = A x, A is rows x cols row-major
        void (*gemv)(const double *A, std::size_t rows, std::size_t cols, const double *x, double *y);

        // y = A^T x, A is rows x cols row-major, y has cols entries
        void (*gemv_t)(const double *A, std::size_t rows, std::size_t cols, const double *x, double *y);

        // G = W^T diag(w) W, W is rows x cols row-major, G is cols x cols (full, symmetric)
        void (*weighted_gram)(const double *W, std::size_t rows, std::size_t cols, const double *w, double *G);

        // acc += sum_k y_k y_k^H for count vectors of length n stored sample-major in (re, im);
        // acc_re / acc_im are n x n row-major
        void (*outer_accumulate)(const double *re, const double *im, std::size_t n, std::size_t count,
                                 double *acc_re, double *acc_im);
    };

    // Table chosen at first use (CPU detection + COVDECON_SIMD override)
    const KernelTable &kernels();

    // Table for a specific ISA; throws std::runtime_error if not compiled in or not supported by the CPU
    const KernelTable &kernels(Isa isa);

    bool isa_available(Isa isa);
    std::vector<Isa> available_isas();
    std::string_view isa_name(Isa isa);

    namespace detail
    {
        extern const KernelTable scalar_table;
#if defined(COVDECON_HAVE_AVX2)
        extern const KernelTable avx2_table;
#endif
#if defined(COVDECON_HAVE_NEON)
        extern const KernelTable neon_table;
#endif
    }
}
