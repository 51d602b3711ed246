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

#include <catch_amalgamated.hpp>

#include "covdecon/angle_set.hpp"
#include "covdecon/errors.hpp"
#include "covdecon/linalg.hpp"

using namespace covdecon;

TEST_CASE("intervals are sorted and merged")
{
    const AngleSet s({{0.5, 0.8}, {-1.0, -0.2}, {0.7, 1.0}, {-0.2, 0.0}});
    REQUIRE(s.intervals().size() == 2);
    CHECK(s.intervals()[0] == Interval{-1.0, 0.0});
    CHECK(s.intervals()[1] == Interval{0.5, 1.0});
    CHECK(s.total_length() == Catch::Approx(1.5));
}

TEST_CASE("membership is closed at both ends")
{
    const AngleSet s = AngleSet::interval(0.0, 1.0);
    CHECK(s.contains(0.0));
    CHECK(s.contains(1.0));
    CHECK(s.contains(0.5));
    CHECK_FALSE(s.contains(-0.5));
    CHECK_FALSE(s.contains(1.0000001));
    CHECK(AngleSet::full().contains(angle_min));
    CHECK(AngleSet::full().contains(angle_max));
    CHECK_FALSE(AngleSet().contains(0.0));
}

TEST_CASE("set algebra")
{
    const AngleSet a({{-1.0, 0.0}, {0.5, 1.0}});
    const AngleSet b = AngleSet::interval(-0.5, 0.75);
    const AngleSet i = a.intersect(b);
    REQUIRE(i.intervals().size() == 2);
    CHECK(i.intervals()[0] == Interval{-0.5, 0.0});
    CHECK(i.intervals()[1] == Interval{0.5, 0.75});
    CHECK(a.unite(b) == AngleSet::interval(-1.0, 1.0));
    CHECK(i.is_subset_of(a));
    CHECK(i.is_subset_of(b));
    CHECK_FALSE(a.is_subset_of(b));
    CHECK(AngleSet().is_subset_of(a));

    // touching closed intervals intersect in a single point of zero length
    const AngleSet p = AngleSet::interval(0.0, 1.0).intersect(AngleSet::interval(-1.0, 0.0));
    CHECK(p.total_length() == 0.0);
    CHECK(p.contains(0.0));
}

TEST_CASE("endpoints lists every edge")
{
    const AngleSet a({{-1.0, 0.0}, {0.5, 1.0}});
    CHECK(a.endpoints() == std::vector<double>{-1.0, 0.0, 0.5, 1.0});
}

TEST_CASE("invalid intervals are rejected")
{
    CHECK_THROWS_AS(AngleSet::interval(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(AngleSet::interval(-2.0, 0.0), DomainError);
    CHECK_THROWS_AS(AngleSet::interval(0.0, 1.6), DomainError);
}
