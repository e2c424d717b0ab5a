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
#include "farelay/simd/kernels.hpp"
#include "normal_coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace farelay::simd
{
    namespace
    {
        inline double clamp_u(double u)
        {
            return std::min(std::max(u, coeffs::u_floor), coeffs::u_ceil);
        }

        double genz_point(const genz_plan &plan, const double *w, double *y)
        {
            const std::size_t n = plan.dim;
            double f = plan.first_factor;
            y[0] = std_normal_quantile_unchecked(clamp_u(w[0] * f));
            for (std::size_t i = 1; i < n; ++i)
            {
                const double *row = plan.chol + i * n;
                double s = 0.0;
                for (std::size_t j = 0; j < i; ++j)
                    s += row[j] * y[j];
                const double e = std_normal_cdf((plan.limits[i] - s) / row[i]);
                f *= e;
                if (i + 1 < n)
                    y[i] = std_normal_quantile_unchecked(clamp_u(w[i] * e));
            }
            return f;
        }

        double genz_sum(const genz_plan &plan, const lattice_block &block)
        {
            const std::size_t m = plan.dim - 1;
            std::vector<double> w(m), wa(m), y(plan.dim);
            double total = 0.0;
            for (std::size_t k = 0; k < block.count; ++k)
            {
                const double index = static_cast<double>(block.first + k);
                for (std::size_t j = 0; j < m; ++j)
                {
                    const double x = index * block.generator[j] + block.shift[j];
                    const double frac = x - std::floor(x);
                    w[j] = std::fabs(2.0 * frac - 1.0);
                    wa[j] = 1.0 - w[j];
                }
                const double a = genz_point(plan, w.data(), y.data());
                const double b = genz_point(plan, wa.data(), y.data());
                total += 0.5 * (a + b);
            }
            return total;
        }

        void best_gain(std::size_t ports, const double *factor, const double *g_re, const double *g_im,
                       std::size_t count, double *best, std::uint32_t *best_port)
        {
            for (std::size_t t = 0; t < count; ++t)
            {
                double top = -1.0;
                std::uint32_t arg = 0;
                for (std::size_t l = 0; l < ports; ++l)
                {
                    const double *row = factor + l * ports;
                    double re = 0.0, im = 0.0;
                    for (std::size_t j = 0; j <= l; ++j)
                    {
                        re += row[j] * g_re[j * count + t];
                        im += row[j] * g_im[j * count + t];
                    }
                    const double p = re * re + im * im;
                    if (p > top)
                    {
                        top = p;
                        arg = static_cast<std::uint32_t>(l);
                    }
                }
                best[t] = top;
                best_port[t] = arg;
            }
        }

        void normal_cdf(const double *in, double *out, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                out[i] = std_normal_cdf(in[i]);
        }

        void normal_quantile(const double *in, double *out, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
                out[i] = std_normal_quantile_unchecked(clamp_u(in[i]));
        }
    }

    namespace detail
    {
        const kernel_table scalar_table{isa::scalar, &genz_sum, &best_gain, &normal_cdf, &normal_quantile};
    }
}
