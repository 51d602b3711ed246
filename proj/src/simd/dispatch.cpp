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

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace covdecon::simd
{
    namespace
    {
        bool cpu_supports(Isa isa)
        {
            switch (isa)
            {
            case Isa::scalar:
                return true;
            case Isa::avx2:
#if defined(COVDECON_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
                return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
                return false;
#endif
            case Isa::neon:
#if defined(COVDECON_HAVE_NEON)
                return true;
#else
                return false;
#endif
            }
            return false;
        }

        const KernelTable &select()
        {
            const char *env = std::getenv("COVDECON_SIMD");
            const std::string choice = env ? env : "auto";
            if (choice == "scalar")
                return detail::scalar_table;
            if (choice == "avx2")
                return kernels(Isa::avx2);
            if (choice == "neon")
                return kernels(Isa::neon);
            if (choice != "auto" && !choice.empty())
                throw std::runtime_error("COVDECON_SIMD: unknown value '" + choice + "'");

            if (cpu_supports(Isa::avx2))
                return kernels(Isa::avx2);
            if (cpu_supports(Isa::neon))
                return kernels(Isa::neon);
            return detail::scalar_table;
        }
    }

    bool isa_available(Isa isa)
    {
        return cpu_supports(isa);
    }

    std::vector<Isa> available_isas()
    {
        std::vector<Isa> out;
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (cpu_supports(isa))
                out.push_back(isa);
        return out;
    }

    std::string_view isa_name(Isa isa)
    {
        switch (isa)
        {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
        }
        return "unknown";
    }

    const KernelTable &kernels(Isa isa)
    {
        if (!cpu_supports(isa))
            throw std::runtime_error("SIMD variant '" + std::string(isa_name(isa)) + "' is not available");
        switch (isa)
        {
#if defined(COVDECON_HAVE_AVX2)
        case Isa::avx2:
            return detail::avx2_table;
#endif
#if defined(COVDECON_HAVE_NEON)
        case Isa::neon:
            return detail::neon_table;
#endif
        default:
            return detail::scalar_table;
        }
    }

    const KernelTable &kernels()
    {
        static const KernelTable &table = select();
        return table;
    }
}
