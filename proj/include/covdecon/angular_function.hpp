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

#include <functional>
#include <vector>

#include "covdecon/angle_set.hpp"

namespace covdecon
{
    // Real function on the angle domain together with the points where it may be
    // discontinuous. Quadrature splits at the breakpoints so every piece is smooth.
    struct AngularFunction
    {
        std::function<double(double)> eval;
        std::vector<double> breakpoints;

        double operator()(double theta) const { return eval(theta); }
    };

    AngularFunction zero_function();

    // theta -> f(theta) * 1_S(theta)
    AngularFunction mask(const AngularFunction &f, const AngleSet &set);
}
