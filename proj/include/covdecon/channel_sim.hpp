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

#include <cstdint>
#include <random>
#include <vector>

#include "covdecon/array_response.hpp"
#include "covdecon/linalg.hpp"
#include "covdecon/spectrum.hpp"
#include "covdecon/vectorize.hpp"

namespace covdecon
{
    using Rng = std::mt19937_64;

    // Stream seed for (base, keys...) by splitmix64 mixing; independent streams for
    // distinct key tuples regardless of the order in which runs execute
    std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys);

    // `count` complex vectors of length `dim`, real and imaginary parts in separate
    // sample-major planes
    struct SnapshotBlock
    {
        int dim = 0;
        int count = 0;
        std::vector<double> re;
        std::vector<double> im;

        static SnapshotBlock zeros(int dim, int count);

        ComplexVector sample(int k) const;
        void set_sample(int k, const ComplexVector &v);
    };

    // Pilot symbols s[k]; an empty list is the constant pilot s[k] = 1
    struct Pilot
    {
        std::vector<Complex> symbols;

        Complex at(std::size_t k) const { return symbols.empty() ? Complex(1.0, 0.0) : symbols[k % symbols.size()]; }
    };

    struct UserProfile
    {
        int id = 0;
        AngularPowerSpectrum aps;
        Pilot pilot;
    };

    struct ChannelBatch
    {
        SnapshotBlock samples;
        CovarianceView source_covariance;
    };

    struct RxRecord
    {
        SnapshotBlock y;
        double sigma2 = 0.0;
        int num_users = 0;
    };

    struct UserSignal
    {
        const ChannelBatch *channels = nullptr;
        Pilot pilot;
    };

    // un_vec(T(rho))
    CovarianceView covariance_from_aps(const ArrayConfig &cfg, const AngularPowerSpectrum &rho,
                                       const QuadratureRule &quad);
    CovarianceView covariance_from_aps(const SampledResponse &sampled, const AngularPowerSpectrum &rho);

    // h[k] = U S^{1/2} w[k], w[k] ~ CN(0, I). Eigenvalues in [-1e-8 max(1, lambda_max), 0) are
    // clipped; anything more negative throws ValidationError.
    ChannelBatch sample_channels(const CovarianceView &R, int num_samples, std::uint64_t seed);

    // y[k] = sum_j h_j[k] s_j[k] + n[k], n[k] ~ CN(0, sigma2 I)
    RxRecord received_signal(const std::vector<UserSignal> &users, double sigma2, std::uint64_t seed);

    // (1/L) sum_k y[k] y[k]^H; throws DomainError for an empty set
    ComplexMatrix sample_covariance(const SnapshotBlock &samples);
    ComplexMatrix sample_covariance(const std::vector<ComplexVector> &samples);

    // Toeplitz/PSD projection of the sample covariance of clean desired-user channels
    CovarianceView baseline_estimator(const SnapshotBlock &h1_samples, int max_iters = 500, double tol = 1e-9);

    // Toeplitz/PSD projection of (1/L) sum y y^H - sigma2 I
    CovarianceView estimated_rd(const RxRecord &record, int max_iters = 500, double tol = 1e-9);

    // One row per sample, interleaved re,im columns
    void write_snapshots_csv(std::ostream &os, const SnapshotBlock &block);
}
