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

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "covdecon/linalg.hpp"
#include "covdecon/spectrum.hpp"

namespace covdecon::io
{
    // %.17g: enough digits to round-trip every double
    std::string format_double(double v);

    // Row-major, comma separated, one matrix row per line
    void write_matrix_csv(std::ostream &os, const Matrix &M);
    Matrix read_matrix_csv(std::istream &is);

    // N rows, 2N columns: re(0),im(0),re(1),im(1),...
    void write_covariance_csv(std::ostream &os, const ComplexMatrix &M);
    ComplexMatrix read_covariance_csv(std::istream &is);

    void write_matrix_csv(const std::string &path, const Matrix &M);
    Matrix read_matrix_csv(const std::string &path);
    void write_covariance_csv(const std::string &path, const ComplexMatrix &M);
    ComplexMatrix read_covariance_csv(const std::string &path);

    // {"kind": "...", "components": [{"alpha", "phi", "delta"}], "intervals": [[lo, hi], ...]}
    // A masked spectrum stores its mask in "intervals" and its base either as "components"
    // (mixture base) or as a nested "base" object.
    nlohmann::json aps_to_json(const AngularPowerSpectrum &rho);
    AngularPowerSpectrum aps_from_json(const nlohmann::json &j);

    nlohmann::json angle_set_to_json(const AngleSet &set);
    AngleSet angle_set_from_json(const nlohmann::json &j);

    nlohmann::json read_json_file(const std::string &path);
}
