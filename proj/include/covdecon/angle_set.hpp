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

#include <vector>

namespace covdecon
{
    struct Interval
    {
        double lo = 0.0;
        double hi = 0.0;

        double length() const { return hi - lo; }
        bool contains(double theta) const { return theta >= lo && theta <= hi; }
        bool operator==(const Interval &) const = default;
    };

    /*!MD
    # AngleSet
    Finite union of closed intervals inside the angle domain [-pi/2, pi/2]

    The constructor sorts the intervals and merges overlapping or touching ones, so the
    stored list is always sorted and pairwise disjoint. Degenerate intervals [a, a] are
    kept (they matter for pointwise membership) but carry no measure.
    MD!*/
    class AngleSet
    {
    public:
        AngleSet() = default;
        explicit AngleSet(std::vector<Interval> intervals);

        static AngleSet full();
        static AngleSet interval(double lo, double hi);

        const std::vector<Interval> &intervals() const { return intervals_; }
        bool empty() const { return intervals_.empty(); }
        double total_length() const;
        bool contains(double theta) const;

        AngleSet intersect(const AngleSet &other) const;
        AngleSet unite(const AngleSet &other) const;
        bool is_subset_of(const AngleSet &other) const;

        // All interval endpoints in increasing order
        std::vector<double> endpoints() const;

        bool operator==(const AngleSet &) const = default;

    private:
        std::vector<Interval> intervals_;
    };
}
