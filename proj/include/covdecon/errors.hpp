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

#include <stdexcept>
#include <string>

namespace covdecon
{
    // Argument outside the admissible domain (angles outside [-pi/2, pi/2], negative variances, ...)
    struct DomainError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Vector or matrix sizes that do not fit together
    struct DimensionError : std::length_error
    {
        using std::length_error::length_error;
    };

    // Inputs that violate a structural requirement (symmetry, positive semidefiniteness)
    struct ValidationError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Angle sets with zero total length where a non-null set is required
    struct DegenerateSetError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Malformed experiment configuration or input files
    struct ConfigError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };
}
