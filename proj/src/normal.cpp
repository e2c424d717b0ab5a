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

#include "farelay/normal.hpp"
#include "farelay/error.hpp"
#include "simd/normal_coeffs.hpp"

#include <cmath>
#include <string>

namespace farelay
{
    namespace
    {
        template <std::size_t n>
        double horner(const double (&c)[n], double x)
        {
            double s = c[n - 1];
            for (std::size_t i = n - 1; i-- > 0;)
                s = s * x + c[i];
            return s;
        }
    }

    double std_normal_cdf(double x)
    {
        return 0.5 * std::erfc(-x * 0.70710678118654752440);
    }

    double std_normal_quantile_unchecked(double u)
    {
        using namespace simd::coeffs;
        const double q = u - 0.5;
        if (std::fabs(q) <= q_split_central)
        {
            const double r = 0.180625 - q * q;
            return q * horner(q_central_num, r) / horner(q_central_den, r);
        }
        double r = std::sqrt(-std::log(q < 0.0 ? u : 1.0 - u));
        double v;
        if (r <= q_split_tail)
        {
            r -= 1.6;
            v = horner(q_mid_num, r) / horner(q_mid_den, r);
        }
        else
        {
            r -= 5.0;
            v = horner(q_tail_num, r) / horner(q_tail_den, r);
        }
        return q < 0.0 ? -v : v;
    }

    double std_normal_quantile(double u)
    {
        if (!(u > 0.0 && u < 1.0))
            throw domain_error("std_normal_quantile: argument must lie in (0, 1), got " + std::to_string(u));
        return std_normal_quantile_unchecked(u);
    }
}
