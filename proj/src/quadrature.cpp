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

#include "covdecon/quadrature.hpp"
#include "covdecon/errors.hpp"
#include "covdecon/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace covdecon
{
    namespace
    {
        constexpr int batch = 8;

        // P_n and P_n' at `batch` points at once by the three-term recurrence
        // P_k = a_k x P_{k-1} - b_k P_{k-2}; interleaving the points hides the FMA latency
        void legendre_batch(int n, const std::vector<double> &a, const std::vector<double> &b, const double *x,
                            double *p, double *dp)
        {
            double p0[batch], p1[batch];
            for (int j = 0; j < batch; ++j)
            {
                p0[j] = 1.0;
                p1[j] = x[j];
            }
            for (int k = 2; k <= n; ++k)
                for (int j = 0; j < batch; ++j)
                {
                    const double pk = a[k] * x[j] * p1[j] - b[k] * p0[j];
                    p0[j] = p1[j];
                    p1[j] = pk;
                }
            for (int j = 0; j < batch; ++j)
            {
                p[j] = n == 0 ? 1.0 : p1[j];
                dp[j] = n == 0 ? 0.0 : n * (x[j] * p1[j] - p0[j]) / (x[j] * x[j] - 1.0);
            }
        }

        ReferenceRule compute_reference(int n)
        {
            ReferenceRule rule;
            rule.nodes.resize(n);
            rule.weights.resize(n);

            std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0);
            for (int k = 2; k <= n; ++k)
            {
                a[k] = (2.0 * k - 1.0) / k;
                b[k] = (k - 1.0) / k;
            }

            // Roots come in +-x pairs; x = 0 is a root for odd n
            const int count = (n + 1) / 2;
            for (int first = 0; first < count; first += batch)
            {
                double x[batch], p[batch], dp[batch];
                for (int j = 0; j < batch; ++j)
                {
                    const int i = std::min(first + j, count - 1);
                    // Tricomi's asymptotic guess for the i-th largest root
                    const double t = pi * (4.0 * (i + 1) - 1.0) / (4.0 * n + 2.0);
                    x[j] = (1.0 - (n - 1.0) / (8.0 * double(n) * n * n)) * std::cos(t);
                }
                for (int it = 0; it < 20; ++it)
                {
                    legendre_batch(n, a, b, x, p, dp);
                    bool done = true;
                    for (int j = 0; j < batch; ++j)
                    {
                        const double dx = p[j] / dp[j];
                        x[j] -= dx;
                        done = done && std::abs(dx) <= 1e-15 * std::max(std::abs(x[j]), 1e-3);
                    }
                    if (done)
                        break;
                }
                legendre_batch(n, a, b, x, p, dp);
                for (int j = 0; j < batch && first + j < count; ++j)
                {
                    const int i = first + j;
                    const double w = 2.0 / ((1.0 - x[j] * x[j]) * dp[j] * dp[j]);
                    const double xi = (n % 2 == 1 && i == count - 1) ? 0.0 : x[j];
                    rule.nodes[i] = -xi;
                    rule.nodes[n - 1 - i] = xi;
                    rule.weights[i] = w;
                    rule.weights[n - 1 - i] = w;
                }
            }
            return rule;
    }
    }

    int default_quadrature_order(int num_antennas)
    {
        if (num_antennas < 1)
            throw DomainError("default_quadrature_order: num_antennas must be >= 1");
        return 8 * num_antennas * (num_antennas - 1) + 64;
    }

    const ReferenceRule &gauss_legendre_reference(int order)
    {
        if (order < 1)
            throw DomainError("Gauss-Legendre order must be >= 1");
        static std::mutex mutex;
        static std::map<int, std::unique_ptr<ReferenceRule>> cache;
        std::lock_guard lock(mutex);
        auto &slot = cache[order];
        if (!slot)
            slot = std::make_unique<ReferenceRule>(compute_reference(order));
        return *slot;
    }

    QuadratureRule::QuadratureRule(int order, std::vector<Interval> pieces) : order_(order), pieces_(std::move(pieces))
    {
        const ReferenceRule &ref = gauss_legendre_reference(order);
        nodes_.reserve(pieces_.size() * order);
        weights_.reserve(pieces_.size() * order);
        for (const auto &iv : pieces_)
        {
            const double mid = 0.5 * (iv.lo + iv.hi);
            const double half = 0.5 * (iv.hi - iv.lo);
            for (int k = 0; k < order; ++k)
            {
                nodes_.push_back(mid + half * ref.nodes[k]);
                weights_.push_back(half * ref.weights[k]);
            }
        }
    }

    QuadratureRule QuadratureRule::gauss_legendre(int order, Interval domain)
    {
        if (!(domain.lo < domain.hi))
            throw DomainError("QuadratureRule: empty integration interval");
        return QuadratureRule(order, {domain});
    }

    QuadratureRule QuadratureRule::composite(int order, const AngleSet &pieces)
    {
        std::vector<Interval> kept;
        for (const auto &iv : pieces.intervals())
            if (iv.length() > 0.0)
                kept.push_back(iv);
        return QuadratureRule(order, std::move(kept));
    }

    QuadratureRule QuadratureRule::split_at(std::span<const double> breakpoints) const
    {
        if (breakpoints.empty())
            return *this;
        std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        std::vector<Interval> out;
        bool changed = false;
        for (const auto &iv : pieces_)
        {
            double lo = iv.lo;
            for (double c : cuts)
            {
                if (c > lo && c < iv.hi)
                {
                    out.push_back({lo, c});
                    lo = c;
                    changed = true;
                }
            }
            out.push_back({lo, iv.hi});
        }
        if (!changed)
            return *this;
        return QuadratureRule(order_, std::move(out));
    }

    QuadratureRule QuadratureRule::restricted_to(const AngleSet &set) const
    {
        std::vector<Interval> out;
        for (const auto &piece : pieces_)
            for (const auto &iv : set.intervals())
            {
                const double lo = std::max(piece.lo, iv.lo);
                const double hi = std::min(piece.hi, iv.hi);
                if (hi > lo)
                    out.push_back({lo, hi});
            }
        return QuadratureRule(order_, std::move(out));
    }
}
