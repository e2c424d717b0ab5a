// SPDX-License-Identifier: Apache-2.0
//
// farelay: outage analysis and resource allocation for fluid-antenna relays
// Copyright (C) 2026 The farelay Authors
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

#include "farelay/error.hpp"
#include "farelay/normal.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace farelay;

TEST_CASE("normal CDF matches erfc")
{
    // Relative error grows like x^2 * eps in the lower tail.
    for (double x = -37.0; x <= 8.5; x += 0.173)
    {
        const double ref = oracle::normal_cdf(x);
        if (ref < 1e-290)
            continue;
        CHECK(std::abs(std_normal_cdf(x) - ref) <= 5e-16 * (1.0 + x * x) * ref);
    }
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK(std_normal_cdf(-INFINITY) == 0.0);
    CHECK(std_normal_cdf(INFINITY) == 1.0);
}

TEST_CASE("normal quantile inverts the CDF")
{
    for (double u : {1e-300, 1e-100, 1e-20, 1e-8, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.97575, 0.999, 1.0 - 1e-12})
    {
        const double q = std_normal_quantile(u);
        const double ref = oracle::normal_quantile_bisect(u);
        CHECK(std::abs(q - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
    CHECK(std_normal_quantile(0.5) == 0.0);
}

TEST_CASE("normal quantile rejects arguments outside (0, 1)")
{
    CHECK_THROWS_AS(std_normal_quantile(0.0), domain_error);
    CHECK_THROWS_AS(std_normal_quantile(1.0), domain_error);
    CHECK_THROWS_AS(std_normal_quantile(-0.1), domain_error);
    CHECK_THROWS_AS(std_normal_quantile(NAN), domain_error);
}
