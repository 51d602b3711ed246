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

// Reference computations used only by the tests. Nothing here goes through the library's
// reduced basis, quadrature cache or SIMD kernels.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle
{
    using cplx = std::complex<double>;
    using CMat = Eigen::MatrixXcd;
    using RVec = Eigen::VectorXd;
    using RMat = Eigen::MatrixXd;

    inline constexpr double pi = 3.14159265358979323846;

    // Row-by-row transcription of the vectorization contract
    inline RVec vec(const CMat &M)
    {
        const long N = M.rows();
        RVec out(2 * N * N);
        for (long col = 0; col < N; ++col)
            for (long row = 0; row < N; ++row)
            {
                out[col * N + row] = M(row, col).real();
                out[N * N + col * N + row] = M(row, col).imag();
            }
        return out;
    }

    inline Eigen::VectorXcd steering(int N, double beta, double theta)
    {
        Eigen::VectorXcd a(N);
        for (int k = 0; k < N; ++k)
            a[k] = std::polar(1.0 / std::sqrt(double(N)), beta * k * std::sin(theta));
        return a;
    }

    inline RVec response(int N, double beta, double theta)
    {
        const auto a = steering(N, beta, theta);
        return vec(a * a.adjoint());
    }

    // Covariance of the uniform spectrum 1_Omega at half-wavelength spacing:
    // R_mn = (1/N) int exp(i pi (m-n) sin t) dt = (pi/N) J0(pi (m-n))
    inline CMat bessel_uniform_covariance(int N)
    {
        CMat R(N, N);
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n)
                R(m, n) = pi / N * std::cyl_bessel_j(0.0, pi * std::abs(m - n));
        return R;
    }

    // Closed-form Gram matrix for half-wavelength spacing (beta = pi). Each response function
    // is (1/N) times one of 1, cos(pi p sin t), sin(pi p sin t) with p = row - col; the needed
    // integrals over Omega are
    //   int cos(a s) cos(b s) = (pi/2) [J0(pi(a-b)) + J0(pi(a+b))]
    //   int sin(a s) sin(b s) = (pi/2) [J0(pi(a-b)) - J0(pi(a+b))]
    //   int cos(a s) sin(b s) = 0          (odd in t)
    // with s = sin t and J0 even.
    inline RMat bessel_gram(int N)
    {
        const long dim = 2L * N * N;
        auto J0 = [](double x) { return std::cyl_bessel_j(0.0, pi * std::abs(x)); };
        // kind: 0 -> cos(pi p s), 1 -> sin(pi p s); sign folds into the lag
        struct Fn
        {
            int kind;
            int lag;
            bool zero;
        };
        std::vector<Fn> fns(dim);
        for (int col = 0; col < N; ++col)
            for (int row = 0; row < N; ++row)
            {
                const int p = row - col;
                fns[col * N + row] = {0, p, false};
                fns[N * N + col * N + row] = {1, p, p == 0};
            }
        RMat G(dim, dim);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j)
            {
                const Fn &a = fns[i], &b = fns[j];
                double v = 0.0;
                if (a.zero || b.zero || a.kind != b.kind)
                    v = 0.0;
                else if (a.kind == 0)
                    v = 0.5 * pi * (J0(a.lag - b.lag) + J0(a.lag + b.lag));
                else
                    v = 0.5 * pi * (J0(a.lag - b.lag) - J0(a.lag + b.lag));
                G(i, j) = v / (double(N) * N);
            }
        return G;
    }

    // Composite Simpson rule on [lo, hi] with `panels` (even) subintervals
    template <class F>
    double simpson(F &&f, double lo, double hi, int panels)
    {
        if (panels % 2)
            ++panels;
        const double h = (hi - lo) / panels;
        double s = f(lo) + f(hi);
        for (int k = 1; k < panels; ++k)
            s += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
        return s * h / 3.0;
    }

    // Random Hermitian PSD Toeplitz matrix: covariance of a random positive line spectrum
    template <class Rng>
    CMat random_psd_toeplitz(int N, Rng &rng)
    {
        std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.0, 1.0);
        const int K = 1 + int(w(rng) * 4);
        CMat R = CMat::Zero(N, N);
        for (int k = 0; k < K; ++k)
        {
            const double omega = pi * u(rng);
            Eigen::VectorXcd v(N);
            for (int n = 0; n < N; ++n)
                v[n] = std::polar(1.0, omega * n);
            R += w(rng) * v * v.adjoint();
        }
        R += w(rng) * CMat::Identity(N, N);
        return R;
    }

    template <class Rng>
    CMat random_complex(int rows, int cols, Rng &rng)
    {
        std::normal_distribution<double> g(0.0, 1.0);
        CMat M(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                M(i, j) = cplx(g(rng), g(rng));
        return M;
    }

    template <class Rng>
    CMat random_hermitian(int N, Rng &rng)
    {
        const CMat A = random_complex(N, N, rng);
        return 0.5 * (A + A.adjoint());
    }

    inline bool is_toeplitz(const CMat &M, double tol)
    {
        for (long i = 1; i < M.rows(); ++i)
            for (long j = 1; j < M.cols(); ++j)
                if (std::abs(M(i, j) - M(i - 1, j - 1)) > tol)
                    return false;
        return true;
    }

    inline double min_eigenvalue(const CMat &M)
    {
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (M + M.adjoint()), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }
}
