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

#pragma once

#include "farelay/channel.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace farelay
{
    struct mvn_options
    {
        double target_abs_error = 1e-4;      // in (0, 0.1]
        std::uint64_t max_samples = 2000000; // integrand evaluations, antithetic pairs count twice
        std::uint64_t seed = 0;
    };

    struct mvn_estimate
    {
        double value = 0.0;     // in [0, 1]
        double est_error = 0.0; // 3 standard errors over the random lattice shifts
        std::uint64_t samples_used = 0;
        bool converged = true; // false when max_samples ran out before target_abs_error
    };

    struct mvn_problem
    {
        std::reference_wrapper<const correlation_matrix> corr;
        std::vector<double> upper_limits; // -inf gives 0, +inf drops the coordinate
        mvn_options options{};
    };

    // P(Z_1 <= b_1, ..., Z_N <= b_N) for Z ~ N(0, J), J = corr.entries().
    // Randomized quasi-Monte Carlo over the separation-of-variables transform
    // (Cholesky factor with priority variable ordering, shifted Richtmyer lattices,
    // tent periodization, antithetic pairs). Deterministic for a given seed,
    // independent of the thread count.
    mvn_estimate mvn_cdf(const correlation_matrix &corr, std::span<const double> upper_limits,
                         const mvn_options &options = {});

    mvn_estimate mvn_cdf(const mvn_problem &problem);
}
