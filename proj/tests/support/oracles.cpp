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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle
{
    namespace
    {
        constexpr double eps = 1e-11;

        struct tableau
        {
            std::size_t rows, cols; // cols excludes the rhs column
            std::vector<std::vector<double>> t; // rows + 1 lines, objective last
            std::vector<std::size_t> basis;
            std::vector<bool> allowed;

            double &obj(std::size_t j) { return t[rows][j]; }

            void pivot(std::size_t r, std::size_t c)
            {
                const double p = t[r][c];
                for (auto &v : t[r])
                    v /= p;
                for (std::size_t i = 0; i <= rows; ++i)
                {
                    if (i == r || t[i][c] == 0.0)
                        continue;
                    const double f = t[i][c];
                    for (std::size_t j = 0; j <= cols; ++j)
                        t[i][j] -= f * t[r][j];
                }
                basis[r] = c;
            }

            // Objective row holds -c (reduced costs); maximize until none is negative.
            bool run()
            {
                for (int it = 0; it < 100000; ++it)
                {
                    std::size_t enter = cols;
                    for (std::size_t j = 0; j < cols; ++j)
                        if (allowed[j] && t[rows][j] < -eps)
                        {
                            enter = j;
                            break;
                        }
                    if (enter == cols)
                        return true;
                    std::size_t leave = rows;
                    double best = std::numeric_limits<double>::infinity();
                    for (std::size_t i = 0; i < rows; ++i)
                        if (t[i][enter] > eps)
                        {
                            const double ratio = t[i][cols] / t[i][enter];
                            if (ratio < best - eps || (std::abs(ratio - best) <= eps && basis[i] < basis[leave]))
                            {
                                best = ratio;
                                leave = i;
                            }
                        }
                    if (leave == rows)
                        return false;
                    pivot(leave, enter);
                }
                return false;
            }
        };
    }

    lp_solution lp_maximize(const std::vector<double> &c, const std::vector<std::vector<double>> &a,
                            const std::vector<double> &b)
    {
        const std::size_t m = a.size(), n = c.size();
        std::vector<bool> flipped(m);
        std::size_t n_art = 0;
        for (std::size_t i = 0; i < m; ++i)
        {
            flipped[i] = b[i] < 0.0;
            n_art += flipped[i];
        }
        // Columns: x (n), slack per row (m), artificials.
        tableau tb{m, n + m + n_art, {}, std::vector<std::size_t>(m), {}};
        tb.t.assign(m + 1, std::vector<double>(tb.cols + 1, 0.0));
        tb.allowed.assign(tb.cols, true);
        std::size_t art = n + m;
        std::vector<std::size_t> art_cols;
        for (std::size_t i = 0; i < m; ++i)
        {
            const double sgn = flipped[i] ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n; ++j)
                tb.t[i][j] = sgn * a[i][j];
            tb.t[i][n + i] = sgn;
            tb.t[i][tb.cols] = sgn * b[i];
            if (flipped[i])
            {
                tb.t[i][art] = 1.0;
                tb.basis[i] = art;
                art_cols.push_back(art++);
            }
            else
                tb.basis[i] = n + i;
        }

        lp_solution sol;
        if (n_art)
        {
            for (std::size_t col : art_cols)
                tb.obj(col) = 1.0;
            for (std::size_t i = 0; i < m; ++i)
                if (flipped[i])
                    for (std::size_t j = 0; j <= tb.cols; ++j)
                        tb.t[m][j] -= tb.t[i][j];
            tb.run();
            if (tb.t[m][tb.cols] < -1e-9)
            {
                sol.status = lp_status::infeasible;
                return sol;
            }
            for (std::size_t i = 0; i < m; ++i)
                if (tb.basis[i] >= n + m)
                    for (std::size_t j = 0; j < n + m; ++j)
                        if (std::abs(tb.t[i][j]) > eps)
                        {
                            tb.pivot(i, j);
                            break;
                        }
            for (std::size_t col : art_cols)
                tb.allowed[col] = false;
        }

        std::fill(tb.t[m].begin(), tb.t[m].end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            tb.obj(j) = -c[j];
        for (std::size_t i = 0; i < m; ++i)
        {
            const double f = tb.t[m][tb.basis[i]];
            if (f != 0.0)
                for (std::size_t j = 0; j <= tb.cols; ++j)
                    tb.t[m][j] -= f * tb.t[i][j];
        }
        if (!tb.run())
        {
            sol.status = lp_status::unbounded;
            return sol;
        }
        sol.status = lp_status::optimal;
        sol.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (tb.basis[i] < n)
                sol.x[tb.basis[i]] = tb.t[i][tb.cols];
        sol.value = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            sol.value += c[j] * sol.x[j];
        return sol;
    }

    lp_solution bandwidth_lp(const std::vector<double> &snrs, const std::vector<double> &rate_mins, double total_bw)
    {
        const std::size_t k = snrs.size();
        std::vector<double> c(k);
        for (std::size_t i = 0; i < k; ++i)
            c[i] = 0.5 * std::log2(1.0 + snrs[i]);
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        a.push_back(std::vector<double>(k, 1.0));
        b.push_back(total_bw);
        for (std::size_t i = 0; i < k; ++i)
        {
            std::vector<double> row(k, 0.0);
            row[i] = -c[i];
            a.push_back(row);
            b.push_back(-rate_mins[i]);
        }
        return lp_maximize(c, a, b);
    }

    namespace
    {
        double axis(double lo, double hi, std::size_t i, std::size_t n)
        {
            return n == 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        }
    }

    double power_grid_best(const farelay::user_config &cfg, const farelay::snr_triple &s, double c_th, std::size_t n)
    {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
        {
            const double pu = axis(cfg.p_user_min, cfg.p_user_max, i, n);
            for (std::size_t j = 0; j < n; ++j)
            {
                const double pr = axis(cfg.p_relay_min, cfg.p_relay_max, j, n);
                const double su = pu * s.gamma_ub, sr = pr * s.gamma_rb;
                if (su + sr <= c_th)
                    continue;
                // Direct comparison of the two outage thresholds.
                const double xi_af = (sr + 1.0) * (c_th - su) / (su + sr - c_th);
                const double xi_df = c_th;
                const double v = xi_af <= xi_df ? farelay::snr_af(pu, pr, s) : farelay::snr_df(pu, pr, s);
                best = std::max(best, v);
            }
        }
        return best;
    }

    double df_grid_best(const farelay::user_config &cfg, const farelay::snr_triple &s, double c_th, std::size_t n)
    {
        double best = -std::numeric_limits<double>::infinity();
        const double k = c_th * c_th + c_th;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double pu = axis(cfg.p_user_min, cfg.p_user_max, i, n);
            for (std::size_t j = 0; j < n; ++j)
            {
                const double pr = axis(cfg.p_relay_min, cfg.p_relay_max, j, n);
                const double su = pu * s.gamma_ub, sr = pr * s.gamma_rb;
                if ((c_th + 1.0) * su + su * sr > k)
                    continue;
                best = std::max(best, std::min(su + sr, pu * s.gamma_ur));
            }
        }
        return best;
    }

    std::optional<power_instance> random_power_instance(farelay::random_stream &rng)
    {
        const auto log_uniform = [&](double lo, double hi)
        { return lo * std::pow(hi / lo, farelay::uniform01(rng)); };
        farelay::user_config cfg;
        cfg.budget.sigma2_relay = 1.0;
        cfg.budget.sigma2_bs = 1.0;
        cfg.budget.alpha_ub = log_uniform(0.1, 10.0);
        cfg.budget.alpha_rb = log_uniform(0.1, 10.0);
        cfg.budget.alpha_ur = 1.0;
        cfg.p_user_max = log_uniform(0.2, 5.0);
        cfg.p_relay_max = log_uniform(0.2, 5.0);
        const double xi = 0.05 + 1.5 * farelay::uniform01(rng);
        const double c_th = std::exp2(2.0 * xi) - 1.0;
        const double gain = log_uniform(0.05, 20.0); // instantaneous |h|^2 times alpha_ur
        try
        {
            cfg = farelay::with_derived_min_powers(cfg, c_th);
        }
        catch (const farelay::infeasible_error &)
        {
            return std::nullopt;
        }
        // Half the instances get a tighter box so every region configuration occurs.
        if (farelay::uniform01(rng) < 0.5)
        {
            const double t = cfg.p_user_min / cfg.p_user_max;
            const double f = t + (1.0 - t) * 0.9 * farelay::uniform01(rng);
            cfg.p_user_min = f * cfg.p_user_max;
            cfg.p_relay_min = f * cfg.p_relay_max;
        }
        return power_instance{cfg, farelay::snr_triple::instantaneous(cfg.budget, gain), c_th};
    }

    double bivariate_orthant(double rho) { return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi); }

    double j0_series(double x)
    {
        long double term = 1.0L, sum = 1.0L;
        const long double x2 = static_cast<long double>(x) * x;
        for (int k = 1; k < 200; ++k)
        {
            term *= -x2 / ((2.0L * k) * (2.0L * k + 1.0L));
            sum += term;
            if (std::abs(term) < 1e-30L)
                break;
        }
        return static_cast<double>(sum);
    }

    double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

    double normal_quantile_bisect(double u)
    {
        if (u > 0.5)
            return -normal_quantile_bisect(1.0 - u);
        double lo = -40.0, hi = 40.0;
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi)
                break;
            (normal_cdf(mid) < u ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
}
