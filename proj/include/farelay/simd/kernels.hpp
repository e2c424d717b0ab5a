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

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the CPU allows, a vectorized variant. The variant is chosen once per
// process (see active_isa) so repeated runs on one machine are bit-identical.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace farelay::simd
{
    enum class isa
    {
        scalar,
        avx2
    };

    const char *to_string(isa id);

    // Compiled in and supported by the running CPU.
    bool supported(isa id);

    // The variant used by default: the environment variable FARELAY_SIMD
    // ("scalar" or "avx2") if set, otherwise the widest supported variant.
    isa active_isa();

    // Overrides the active variant for the rest of the process. Throws
    // domain_error if the variant is not supported.
    void set_active_isa(isa id);

    isa parse_isa(std::string_view name);

    // Separation-of-variables integrand for P(Z <= b), Z ~ N(0, L L^T).
    struct genz_plan
    {
        std::size_t dim = 0;          // >= 2
        const double *chol = nullptr; // dim x dim row-major, lower triangle used, positive diagonal
        const double *limits = nullptr;
        double first_factor = 0.0; // Phi(limits[0] / chol[0])
    };

    // Points i = first, ..., first + count - 1 of the shifted rank-1 lattice
    // x_i = frac(i * generator + shift), tent-periodized and paired with their antithetic.
    struct lattice_block
    {
        const double *generator = nullptr; // dim - 1 entries
        const double *shift = nullptr;     // dim - 1 entries in [0, 1)
        std::uint64_t first = 1;
        std::size_t count = 0;
    };

    // Returns sum over the block of (f(w_i) + f(1 - w_i)) / 2.
    using genz_sum_fn = double (*)(const genz_plan &, const lattice_block &);

    // For each of `count` draws t, evaluates h = L g (complex, L real lower-triangular
    // ports x ports row-major; g stored port-major: g_re[port * count + t]) and reports
    // max_l |h_l|^2 and its smallest maximizing index.
    using best_gain_fn = void (*)(std::size_t ports, const double *factor, const double *g_re, const double *g_im,
                                  std::size_t count, double *best_gain, std::uint32_t *best_port);

    // Elementwise standard normal CDF / quantile (quantile input clamped to the kernel range).
    using elementwise_fn = void (*)(const double *in, double *out, std::size_t n);

    struct kernel_table
    {
        isa id;
        genz_sum_fn genz_sum;
        best_gain_fn best_gain;
        elementwise_fn normal_cdf;
        elementwise_fn normal_quantile;
    };

    const kernel_table &kernels();
    const kernel_table &kernels(isa id);

    namespace detail
    {
        extern const kernel_table scalar_table;
#ifdef FARELAY_HAVE_AVX2
        extern const kernel_table avx2_table;
#endif
    }
}
