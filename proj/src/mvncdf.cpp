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

#include "farelay/mvncdf.hpp"
#include "farelay/error.hpp"
#include "farelay/normal.hpp"
#include "farelay/parallel.hpp"
#include "farelay/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace farelay
{
    namespace
    {
        constexpr std::size_t shifts_per_round = 12;
        constexpr std::uint64_t first_round_points = 128;
        constexpr double error_factor = 3.0;

        // frac(sqrt(p)) for the first m primes.
        std::vector<double> richtmyer_generators(std::size_t m)
        {
            std::vector<double> out;
            out.reserve(m);
            for (std::uint64_t c = 2; out.size() < m; ++c)
            {
                bool prime = true;
                for (std::uint64_t d = 2; d * d <= c; ++d)
                    if (c % d == 0)
                    {
                        prime = false;
                        break;
                    }
                if (prime)
                {
                    const double r = std::sqrt(static_cast<double>(c));
                    out.push_back(r - std::floor(r));
                }
            }
            return out;
        }

        // Cholesky factor of c (n x n, row-major) with the variable at each step
        // chosen to have the smallest conditional probability given the expected
        // values of the earlier ones. Permutes c and b in place; returns L row-major.
        std::vector<double> priority_cholesky(std::vector<double> &c, std::vector<double> &b, std::size_t n)
        {
            std::vector<double> l(n * n, 0.0), y(n, 0.0);
            const auto at = [n](std::vector<double> &m, std::size_t i, std::size_t j) -> double &
            { return m[i * n + j]; };

            for (std::size_t i = 0; i < n; ++i)
            {
                std::size_t pick = i;
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t j = i; j < n; ++j)
                {
                    double s = at(c, j, j), mu = 0.0;
                    for (std::size_t k = 0; k < i; ++k)
                    {
                        s -= at(l, j, k) * at(l, j, k);
                        mu += at(l, j, k) * y[k];
                    }
                    s = std::max(s, 1e-12 * at(c, j, j));
                    const double score = std_normal_cdf((b[j] - mu) / std::sqrt(s));
                    if (score < best)
                    {
                        best = score;
                        pick = j;
                    }
                }
                if (pick != i)
                {
                    std::swap(b[i], b[pick]);
                    for (std::size_t k = 0; k < n; ++k)
                        std::swap(at(c, i, k), at(c, pick, k));
                    for (std::size_t k = 0; k < n; ++k)
                        std::swap(at(c, k, i), at(c, k, pick));
                    for (std::size_t k = 0; k < i; ++k)
                        std::swap(at(l, i, k), at(l, pick, k));
                }

                double s = at(c, i, i), mu = 0.0;
                for (std::size_t k = 0; k < i; ++k)
                {
                    s -= at(l, i, k) * at(l, i, k);
                    mu += at(l, i, k) * y[k];
                }
                const double d = std::sqrt(std::max(s, 1e-12 * at(c, i, i)));
                at(l, i, i) = d;
                for (std::size_t r = i + 1; r < n; ++r)
                {
                    double v = at(c, r, i);
                    for (std::size_t k = 0; k < i; ++k)
                        v -= at(l, r, k) * at(l, i, k);
                    at(l, r, i) = v / d;
                }

                // E[Z | Z < a] for the standardized limit a.
                const double a = (b[i] - mu) / d;
                const double tail = std_normal_cdf(a);
                const double density = std::exp(-0.5 * a * a) / std::sqrt(2.0 * std::numbers::pi);
                y[i] = tail > 1e-300 ? -density / tail : a;
            }
            return l;
        }
    }

    mvn_estimate mvn_cdf(const correlation_matrix &corr, std::span<const double> upper_limits,
                         const mvn_options &options)
    {
        const std::size_t dim = corr.dim();
        if (upper_limits.size() != dim)
            throw domain_error("mvn_cdf: " + std::to_string(upper_limits.size()) + " limits for a " +
                               std::to_string(dim) + "-dimensional correlation matrix");
        if (!(options.target_abs_error > 0.0 && options.target_abs_error <= 0.1))
            throw domain_error("mvn_cdf: target_abs_error must lie in (0, 0.1]");
        if (options.max_samples == 0)
            throw domain_error("mvn_cdf: max_samples must be positive");

        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < dim; ++i)
        {
            const double b = upper_limits[i];
            if (std::isnan(b))
                throw domain_error("mvn_cdf: NaN upper limit");
            if (b == -std::numeric_limits<double>::infinity())
                return {0.0, 0.0, 0, true};
            if (b != std::numeric_limits<double>::infinity())
                keep.push_back(i);
        }
        const std::size_t n = keep.size();
        if (n == 0)
            return {1.0, 0.0, 0, true};
        if (n == 1)
            return {std_normal_cdf(upper_limits[keep[0]]), 0.0, 0, true};

        std::vector<double> c(n * n), b(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            b[i] = upper_limits[keep[i]];
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] = corr.entries()(static_cast<Eigen::Index>(keep[i]), static_cast<Eigen::Index>(keep[j]));
        }
        const std::vector<double> l = priority_cholesky(c, b, n);

        simd::genz_plan plan;
        plan.dim = n;
        plan.chol = l.data();
        plan.limits = b.data();
        plan.first_factor = std_normal_cdf(b[0] / l[0]);
        if (plan.first_factor == 0.0)
            return {0.0, 0.0, 0, true};

        const std::vector<double> generator = richtmyer_generators(n - 1);
        const auto &kern = simd::kernels();

        mvn_estimate out;
        out.converged = false;
        double weight_sum = 0.0, weighted_value = 0.0;
        std::uint64_t points = first_round_points;
        for (std::uint64_t round = 0;; ++round, points *= 2)
        {
            const std::uint64_t cost = 2 * shifts_per_round * points;
            if (round > 0 && out.samples_used + cost > options.max_samples)
                break;

            std::vector<double> shift_means(shifts_per_round);
            parallel::parallel_for(shifts_per_round, [&](std::size_t k)
                                   {
                random_stream rng = make_stream(options.seed, round, k);
                std::vector<double> shift(n - 1);
                for (auto &s : shift)
                    s = uniform01(rng);
                simd::lattice_block block{generator.data(), shift.data(), 1, static_cast<std::size_t>(points)};
                shift_means[k] = kern.genz_sum(plan, block) / static_cast<double>(points); });

            double mean = 0.0;
            for (double v : shift_means)
                mean += v;
            mean /= static_cast<double>(shifts_per_round);
            double var = 0.0;
            for (double v : shift_means)
                var += (v - mean) * (v - mean);
            var /= static_cast<double>(shifts_per_round * (shifts_per_round - 1));
            out.samples_used += cost;

            if (var <= 0.0)
            {
                out.value = mean;
                out.est_error = 0.0;
                out.converged = true;
                break;
            }
            weight_sum += 1.0 / var;
            weighted_value += mean / var;
            out.value = weighted_value / weight_sum;
            out.est_error = error_factor * std::sqrt(1.0 / weight_sum);
            if (out.est_error <= options.target_abs_error)
            {
                out.converged = true;
                break;
            }
        }
        out.value = std::clamp(out.value, 0.0, 1.0);
        return out;
    }

    mvn_estimate mvn_cdf(const mvn_problem &problem)
    {
        return mvn_cdf(problem.corr.get(), problem.upper_limits, problem.options);
    }
}
