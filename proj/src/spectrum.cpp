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

#include "covdecon/spectrum.hpp"
#include "covdecon/errors.hpp"

#include <algorithm>
#include <cmath>

namespace covdecon
{
    AngularPowerSpectrum::AngularPowerSpectrum() = default;

    AngularPowerSpectrum AngularPowerSpectrum::zero()
    {
        return {};
    }

    AngularPowerSpectrum AngularPowerSpectrum::gaussian_mixture(std::vector<GaussianComponent> components)
    {
        for (const auto &c : components)
        {
            if (!(c.alpha >= 0.0) || !std::isfinite(c.alpha))
                throw DomainError("gaussian_mixture: weights must be finite and nonnegative");
            if (!(c.delta > 0.0) || !std::isfinite(c.delta))
                throw DomainError("gaussian_mixture: spreads must be finite and positive");
            check_angle(c.phi);
        }
        AngularPowerSpectrum out;
        out.kind_ = Kind::gaussian_mixture;
        out.components_ = std::move(components);
        return out;
    }

    AngularPowerSpectrum AngularPowerSpectrum::indicator(AngleSet set)
    {
        AngularPowerSpectrum out;
        out.kind_ = Kind::indicator;
        out.set_ = std::move(set);
        return out;
    }

    AngularPowerSpectrum AngularPowerSpectrum::masked(const AngularPowerSpectrum &base, const AngleSet &set)
    {
        AngularPowerSpectrum out;
        out.kind_ = Kind::masked;
        out.set_ = set;
        out.base_ = std::make_shared<const AngularPowerSpectrum>(base);
        return out;
    }

    double AngularPowerSpectrum::value(double theta) const
    {
        switch (kind_)
        {
        case Kind::gaussian_mixture:
        {
            double s = 0.0;
            for (const auto &c : components_)
            {
                const double z = (theta - c.phi) / c.delta;
                s += c.alpha * std::exp(-0.5 * z * z) / (std::sqrt(2.0 * pi) * c.delta);
            }
            return s;
        }
        case Kind::indicator:
            return set_.contains(theta) ? 1.0 : 0.0;
        case Kind::masked:
            return set_.contains(theta) ? base_->value(theta) : 0.0;
        case Kind::zero:
            return 0.0;
        }
        return 0.0;
    }

    double AngularPowerSpectrum::evaluate(double theta) const
    {
        check_angle(theta);
        return value(theta);
    }

    std::vector<double> AngularPowerSpectrum::breakpoints() const
    {
        switch (kind_)
        {
        case Kind::indicator:
            return set_.endpoints();
        case Kind::masked:
        {
            auto out = base_->breakpoints();
            const auto ends = set_.endpoints();
            out.insert(out.end(), ends.begin(), ends.end());
            return out;
        }
        default:
            return {};
        }
    }

    AngleSet AngularPowerSpectrum::support() const
    {
        switch (kind_)
        {
        case Kind::gaussian_mixture:
        {
            const bool any = std::any_of(components_.begin(), components_.end(),
                                         [](const GaussianComponent &c)
                                         { return c.alpha > 0.0; });
            return any ? AngleSet::full() : AngleSet();
        }
        case Kind::indicator:
            return set_;
        case Kind::masked:
            return base_->support().intersect(set_);
        case Kind::zero:
            return {};
        }
        return {};
    }

    double AngularPowerSpectrum::upper_bound() const
    {
        switch (kind_)
        {
        case Kind::gaussian_mixture:
        {
            double s = 0.0;
            for (const auto &c : components_)
                s += c.alpha / (std::sqrt(2.0 * pi) * c.delta);
            return s;
        }
        case Kind::indicator:
            return set_.empty() ? 0.0 : 1.0;
        case Kind::masked:
            return set_.empty() ? 0.0 : base_->upper_bound();
        case Kind::zero:
            return 0.0;
        }
        return 0.0;
    }

    AngularFunction AngularPowerSpectrum::as_function() const
    {
        auto self = std::make_shared<const AngularPowerSpectrum>(*this);
        return {[self](double theta)
                { return self->evaluate(theta); },
                breakpoints()};
    }

    AngularPowerSpectrum mask_aps(const AngularPowerSpectrum &rho, const AngleSet &set)
    {
        using Kind = AngularPowerSpectrum::Kind;
        switch (rho.kind())
        {
        case Kind::zero:
            return rho;
        case Kind::indicator:
            return AngularPowerSpectrum::indicator(rho.set().intersect(set));
        case Kind::masked:
            return AngularPowerSpectrum::masked(*rho.base(), rho.set().intersect(set));
        case Kind::gaussian_mixture:
            return AngularPowerSpectrum::masked(rho, set);
        }
        return rho;
    }

    double inner_product_h3(const AngularFunction &f1, const AngularFunction &f2, const QuadratureRule &quad)
    {
        std::vector<double> cuts = f1.breakpoints;
        cuts.insert(cuts.end(), f2.breakpoints.begin(), f2.breakpoints.end());
        return quad.split_at(cuts).integrate([&](double theta)
                                             { return f1(theta) * f2(theta); });
    }

    double inner_product_h3(const AngularPowerSpectrum &rho1, const AngularPowerSpectrum &rho2,
                            const QuadratureRule &quad)
    {
        return inner_product_h3(rho1.as_function(), rho2.as_function(), quad);
    }

    Vector apply_T(const ArrayConfig &cfg, const AngularPowerSpectrum &rho, const QuadratureRule &quad)
    {
        return apply_T(cfg, rho.as_function(), quad);
    }

    double interference_power(const ArrayConfig &cfg, const AngularPowerSpectrum &rho_j,
                              const AngularPowerSpectrum &rho_l, const QuadratureRule &quad)
    {
        return apply_T(cfg, rho_j, quad).dot(apply_T(cfg, rho_l, quad));
    }

    double chebyshev_bound(double power, double eps)
    {
        if (!(eps > 0.0))
            throw DomainError("chebyshev_bound: eps must be positive");
        if (!(power >= 0.0))
            throw DomainError("chebyshev_bound: power must be nonnegative");
        return power / (eps * eps);
    }

    double quality(const ArrayConfig &cfg, const AngleSet &x, const AngleSet &y, const QuadratureRule &quad)
    {
        return interference_power(cfg, AngularPowerSpectrum::indicator(x), AngularPowerSpectrum::indicator(y), quad);
    }

    InterferenceReport interference_report(const ArrayConfig &cfg, const AngularPowerSpectrum &rho_j,
                                           const AngularPowerSpectrum &rho_l, const std::vector<double> &eps_values,
                                           const QuadratureRule &quad)
    {
        InterferenceReport report;
        report.inner_product = interference_power(cfg, rho_j, rho_l, quad);
        for (double eps : eps_values)
            report.chebyshev.push_back({eps, chebyshev_bound(std::max(report.inner_product, 0.0), eps)});
        const AngleSet sj = rho_j.support();
        const AngleSet sl = rho_l.support();
        if (sj.total_length() > 0.0 && sl.total_length() > 0.0)
            report.quality_bound = rho_j.upper_bound() * rho_l.upper_bound() * quality(cfg, sj, sl, quad);
        return report;
    }
}
