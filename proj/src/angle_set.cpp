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

#include "covdecon/angle_set.hpp"
#include "covdecon/errors.hpp"
#include "covdecon/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace covdecon
{
    AngleSet::AngleSet(std::vector<Interval> intervals)
    {
        for (const auto &iv : intervals)
        {
            if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
                throw DomainError("AngleSet: invalid interval [" + std::to_string(iv.lo) + ", " +
                                  std::to_string(iv.hi) + "]");
            if (iv.lo < angle_min || iv.hi > angle_max)
                throw DomainError("AngleSet: interval [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                                  "] leaves the angle domain [-pi/2, pi/2]");
        }
        std::sort(intervals.begin(), intervals.end(),
                  [](const Interval &a, const Interval &b)
                  { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });

        for (const auto &iv : intervals)
        {
            if (!intervals_.empty() && iv.lo <= intervals_.back().hi)
                intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
            else
                intervals_.push_back(iv);
        }
    }

    AngleSet AngleSet::full()
    {
        return AngleSet({{angle_min, angle_max}});
    }

    AngleSet AngleSet::interval(double lo, double hi)
    {
        return AngleSet({{lo, hi}});
    }

    double AngleSet::total_length() const
    {
        double s = 0.0;
        for (const auto &iv : intervals_)
            s += iv.length();
        return s;
    }

    bool AngleSet::contains(double theta) const
    {
        auto it = std::upper_bound(intervals_.begin(), intervals_.end(), theta,
                                   [](double t, const Interval &iv)
                                   { return t < iv.lo; });
        if (it == intervals_.begin())
            return false;
        return std::prev(it)->contains(theta);
    }

    AngleSet AngleSet::intersect(const AngleSet &other) const
    {
        std::vector<Interval> out;
        std::size_t i = 0, j = 0;
        while (i < intervals_.size() && j < other.intervals_.size())
        {
            const Interval &a = intervals_[i];
            const Interval &b = other.intervals_[j];
            const double lo = std::max(a.lo, b.lo);
            const double hi = std::min(a.hi, b.hi);
            if (lo <= hi)
                out.push_back({lo, hi});
            if (a.hi < b.hi)
                ++i;
            else
                ++j;
        }
        return AngleSet(std::move(out));
    }

    AngleSet AngleSet::unite(const AngleSet &other) const
    {
        std::vector<Interval> all = intervals_;
        all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
        return AngleSet(std::move(all));
    }

    bool AngleSet::is_subset_of(const AngleSet &other) const
    {
        return intersect(other) == *this;
    }

    std::vector<double> AngleSet::endpoints() const
    {
        std::vector<double> out;
        out.reserve(2 * intervals_.size());
        for (const auto &iv : intervals_)
        {
            out.push_back(iv.lo);
            out.push_back(iv.hi);
        }
        return out;
    }
}
