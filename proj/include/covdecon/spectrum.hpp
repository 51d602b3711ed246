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

#include <memory>
#include <vector>

#include "covdecon/angle_set.hpp"
#include "covdecon/angular_function.hpp"
#include "covdecon/array_response.hpp"
#include "covdecon/quadrature.hpp"

namespace covdecon
{
    struct GaussianComponent
    {
        double alpha = 1.0; // weight, >= 0
        double phi = 0.0;   // center angle
        double delta = 0.1; // spread (standard deviation), > 0
    };

    /*!MD
    # AngularPowerSpectrum
    Nonnegative function on [-pi/2, pi/2]

    | kind               | value at theta                                        |
    |--------------------|-------------------------------------------------------|
    | `gaussian_mixture` | sum_k alpha_k / sqrt(2 pi delta_k^2) exp(-(theta - phi_k)^2 / (2 delta_k^2)) |
    | `indicator`        | 1 on the set, 0 elsewhere                             |
    | `masked`           | base(theta) * 1_S(theta)                              |
    | `zero`             | 0                                                     |

    Mixtures are not renormalized to the angle domain; tails outside it are simply never
    integrated. Values are immutable after construction.
    MD!*/
    class AngularPowerSpectrum
    {
    public:
        enum class Kind
        {
            gaussian_mixture,
            indicator,
            masked,
            zero
        };

        AngularPowerSpectrum(); // zero spectrum

        static AngularPowerSpectrum zero();
        static AngularPowerSpectrum gaussian_mixture(std::vector<GaussianComponent> components);
        static AngularPowerSpectrum indicator(AngleSet set);
        static AngularPowerSpectrum masked(const AngularPowerSpectrum &base, const AngleSet &set);

        Kind kind() const { return kind_; }
        const std::vector<GaussianComponent> &components() const { return components_; }
        const AngleSet &set() const { return set_; } // indicator set or mask
        const AngularPowerSpectrum *base() const { return base_.get(); }

        // Value at theta; throws DomainError outside [-pi/2, pi/2]
        double evaluate(double theta) const;
        double operator()(double theta) const { return evaluate(theta); }

        // Points where the spectrum may jump
        std::vector<double> breakpoints() const;

        // Closed set outside which the spectrum vanishes (the whole domain for mixtures)
        AngleSet support() const;

        // Upper bound on the essential supremum
        double upper_bound() const;

        AngularFunction as_function() const;

    private:
        double value(double theta) const;

        Kind kind_ = Kind::zero;
        std::vector<GaussianComponent> components_;
        AngleSet set_;
        std::shared_ptr<const AngularPowerSpectrum> base_;
    };

    // rho * 1_S; idempotent
    AngularPowerSpectrum mask_aps(const AngularPowerSpectrum &rho, const AngleSet &set);

    // integral over [-pi/2, pi/2] of f1 f2, split at the breakpoints of both
    double inner_product_h3(const AngularFunction &f1, const AngularFunction &f2, const QuadratureRule &quad);
    double inner_product_h3(const AngularPowerSpectrum &rho1, const AngularPowerSpectrum &rho2,
                            const QuadratureRule &quad);

    Vector apply_T(const ArrayConfig &cfg, const AngularPowerSpectrum &rho, const QuadratureRule &quad);

    // E|h_j^H h_l|^2 = <T rho_j, T rho_l>
    double interference_power(const ArrayConfig &cfg, const AngularPowerSpectrum &rho_j,
                              const AngularPowerSpectrum &rho_l, const QuadratureRule &quad);

    // power / eps^2, an upper bound on Pr(|h_j^H h_l| >= eps)
    double chebyshev_bound(double power, double eps);

    // Q(X, Y) = <1_X, T*T 1_Y> = <T 1_X, T 1_Y>
    double quality(const ArrayConfig &cfg, const AngleSet &x, const AngleSet &y, const QuadratureRule &quad);

    struct ChebyshevEntry
    {
        double eps;
        double bound;
    };

    struct InterferenceReport
    {
        double inner_product = 0.0;
        std::vector<ChebyshevEntry> chebyshev;
        // sup(rho_j) sup(rho_l) Q(supp rho_j, supp rho_l)
        double quality_bound = 0.0;
    };

    InterferenceReport interference_report(const ArrayConfig &cfg, const AngularPowerSpectrum &rho_j,
                                           const AngularPowerSpectrum &rho_l, const std::vector<double> &eps_values,
                                           const QuadratureRule &quad);
}
