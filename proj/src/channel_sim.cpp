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

#include "covdecon/channel_sim.hpp"
#include "covdecon/decontaminate.hpp"
#include "covdecon/errors.hpp"
#include "covdecon/simd/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace covdecon
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }
    }

    std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys)
    {
        std::uint64_t h = splitmix64(base);
        for (std::uint64_t k : keys)
            h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
        return h;
    }

    SnapshotBlock SnapshotBlock::zeros(int dim, int count)
    {
        SnapshotBlock b;
        b.dim = dim;
        b.count = count;
        b.re.assign(static_cast<std::size_t>(dim) * count, 0.0);
        b.im.assign(static_cast<std::size_t>(dim) * count, 0.0);
        return b;
    }

    ComplexVector SnapshotBlock::sample(int k) const
    {
        ComplexVector v(dim);
        const std::size_t off = static_cast<std::size_t>(k) * dim;
        for (int i = 0; i < dim; ++i)
            v[i] = Complex(re[off + i], im[off + i]);
        return v;
    }

    void SnapshotBlock::set_sample(int k, const ComplexVector &v)
    {
        if (v.size() != dim)
            throw DimensionError("SnapshotBlock::set_sample: length mismatch");
        const std::size_t off = static_cast<std::size_t>(k) * dim;
        for (int i = 0; i < dim; ++i)
        {
            re[off + i] = v[i].real();
            im[off + i] = v[i].imag();
        }
    }

    CovarianceView covariance_from_aps(const ArrayConfig &cfg, const AngularPowerSpectrum &rho,
                                       const QuadratureRule &quad)
    {
        return CovarianceView::from_vec(apply_T(cfg, rho, quad));
    }

    CovarianceView covariance_from_aps(const SampledResponse &sampled, const AngularPowerSpectrum &rho)
    {
        return CovarianceView::from_vec(sampled.apply(rho.as_function()));
    }

    ChannelBatch sample_channels(const CovarianceView &R, int num_samples, std::uint64_t seed)
    {
        if (num_samples < 0)
            throw DomainError("sample_channels: negative sample count");
        const int N = R.dim();
        if (!R.is_hermitian(1e-10 * std::max(1.0, R.matrix().cwiseAbs().maxCoeff())))
            throw ValidationError("sample_channels: covariance is not Hermitian");

        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(R.matrix());
        Vector ev = es.eigenvalues();
        const double tol = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
        if (N > 0 && ev.minCoeff() < -tol)
            throw ValidationError("sample_channels: covariance is indefinite (min eigenvalue " +
                                  std::to_string(ev.minCoeff()) + ")");
        const ComplexMatrix F = es.eigenvectors() * ev.cwiseMax(0.0).cwiseSqrt().asDiagonal();

        Rng rng(seed);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        ComplexMatrix W(N, num_samples);
        for (int k = 0; k < num_samples; ++k)
            for (int i = 0; i < N; ++i)
            {
                const double a = normal(rng);
                const double b = normal(rng);
                W(i, k) = Complex(a, b);
            }
        const ComplexMatrix H = F * W;

        ChannelBatch batch{SnapshotBlock::zeros(N, num_samples), R};
        for (int k = 0; k < num_samples; ++k)
            for (int i = 0; i < N; ++i)
            {
                batch.samples.re[static_cast<std::size_t>(k) * N + i] = H(i, k).real();
                batch.samples.im[static_cast<std::size_t>(k) * N + i] = H(i, k).imag();
            }
        return batch;
    }

    RxRecord received_signal(const std::vector<UserSignal> &users, double sigma2, std::uint64_t seed)
    {
        if (!(sigma2 >= 0.0))
            throw DomainError("received_signal: noise variance must be nonnegative");
        if (users.empty())
            throw DimensionError("received_signal: no users");
        const int N = users.front().channels->samples.dim;
        const int L = users.front().channels->samples.count;
        for (const auto &u : users)
            if (u.channels->samples.dim != N || u.channels->samples.count != L)
                throw DimensionError("received_signal: channel batches differ in length or dimension");

        RxRecord rec{SnapshotBlock::zeros(N, L), sigma2, static_cast<int>(users.size())};
        for (const auto &u : users)
        {
            const SnapshotBlock &h = u.channels->samples;
            for (int k = 0; k < L; ++k)
            {
                const Complex s = u.pilot.at(k);
                const std::size_t off = static_cast<std::size_t>(k) * N;
                for (int i = 0; i < N; ++i)
                {
                    const double hr = h.re[off + i], hi = h.im[off + i];
                    rec.y.re[off + i] += hr * s.real() - hi * s.imag();
                    rec.y.im[off + i] += hr * s.imag() + hi * s.real();
                }
            }
        }

        if (sigma2 > 0.0)
        {
            Rng rng(seed);
            std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * sigma2));
            for (std::size_t t = 0; t < rec.y.re.size(); ++t)
            {
                rec.y.re[t] += normal(rng);
                rec.y.im[t] += normal(rng);
            }
        }
        return rec;
    }

    ComplexMatrix sample_covariance(const SnapshotBlock &samples)
    {
        if (samples.count < 1)
            throw DomainError("sample_covariance: no samples");
        const int N = samples.dim;
        Matrix acc_re = Matrix::Zero(N, N);
        Matrix acc_im = Matrix::Zero(N, N);
        simd::kernels().outer_accumulate(samples.re.data(), samples.im.data(), N, samples.count, acc_re.data(),
                                         acc_im.data());
        const double inv = 1.0 / samples.count;
        ComplexMatrix out(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                out(i, j) = Complex(acc_re(i, j) * inv, acc_im(i, j) * inv);
        return out;
    }

    ComplexMatrix sample_covariance(const std::vector<ComplexVector> &samples)
    {
        if (samples.empty())
            throw DomainError("sample_covariance: no samples");
        SnapshotBlock block = SnapshotBlock::zeros(static_cast<int>(samples.front().size()),
                                                   static_cast<int>(samples.size()));
        for (std::size_t k = 0; k < samples.size(); ++k)
            block.set_sample(static_cast<int>(k), samples[k]);
        return sample_covariance(block);
    }

    CovarianceView baseline_estimator(const SnapshotBlock &h1_samples, int max_iters, double tol)
    {
        return toeplitz_psd_project(sample_covariance(h1_samples), max_iters, tol).projection;
    }

    CovarianceView estimated_rd(const RxRecord &record, int max_iters, double tol)
    {
        ComplexMatrix S = sample_covariance(record.y);
        S.diagonal().array() -= record.sigma2;
        return toeplitz_psd_project(S, max_iters, tol).projection;
    }

    void write_snapshots_csv(std::ostream &os, const SnapshotBlock &block)
    {
        char buf[64];
        for (int k = 0; k < block.count; ++k)
        {
            for (int i = 0; i < block.dim; ++i)
            {
                const std::size_t t = static_cast<std::size_t>(k) * block.dim + i;
                std::snprintf(buf, sizeof buf, "%s%.17g,%.17g", i ? "," : "", block.re[t], block.im[t]);
                os << buf;
            }
            os << '\n';
        }
    }
}
