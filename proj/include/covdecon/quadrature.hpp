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

#include <span>
#include <vector>

#include "covdecon/angle_set.hpp"
#include "covdecon/linalg.hpp"

namespace covdecon
{
    // Gauss-Legendre order used for an N-antenna array unless overridden.
    // The response functions oscillate like exp(i*pi*(N-1)*sin(theta)) at half-wavelength
    // spacing and their products reach lag 2(N-1); 8N(N-1)+64 nodes resolve that comfortably.
    int default_quadrature_order(int num_antennas);

    /*!MD
    # QuadratureRule
    Composite Gauss-Legendre rule over a list of pieces

    Every piece carries the full `order` nodes. Splitting a rule at breakpoints (for
    example the edges of an indicator or a mask) keeps integrands smooth on each piece,
    which is what makes integrals of masked functions accurate.
    MD!*/
    class QuadratureRule
    {
    public:
        static QuadratureRule gauss_legendre(int order, Interval domain = {angle_min, angle_max});
        static QuadratureRule composite(int order, const AngleSet &pieces);

        int order() const { return order_; }
        std::size_t size() const { return nodes_.size(); }
        std::span<const double> nodes() const { return nodes_; }
        std::span<const double> weights() const { return weights_; }
        const std::vector<Interval> &pieces() const { return pieces_; }

        // Same order, pieces subdivided at every breakpoint strictly inside a piece
        QuadratureRule split_at(std::span<const double> breakpoints) const;

        // Same order, pieces intersected with `set`
        QuadratureRule restricted_to(const AngleSet &set) const;

        template <class F>
        double integrate(F &&f) const
        {
            double s = 0.0;
            for (std::size_t k = 0; k < nodes_.size(); ++k)
                s += weights_[k] * f(nodes_[k]);
            return s;
        }

    private:
        QuadratureRule(int order, std::vector<Interval> pieces);

        int order_ = 0;
        std::vector<Interval> pieces_;
        std::vector<double> nodes_;
        std::vector<double> weights_;
    };

    // Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]; cached per order.
    struct ReferenceRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };
    const ReferenceRule &gauss_legendre_reference(int order);
}
