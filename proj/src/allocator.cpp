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

#include "farelay/allocator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace farelay
{
    void user_config::validate() const
    {
        budget.validate();
        const auto positive = [](double v, const char *name)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw domain_error(std::string("user config: ") + name + " must be finite and positive");
        };
        positive(p_user_max, "p_user_max");
        positive(p_relay_max, "p_relay_max");
        if (!(p_user_min >= 0.0) || p_user_min > p_user_max)
            throw domain_error("user config: p_user_min must lie in [0, p_user_max]");
        if (!(p_relay_min >= 0.0) || p_relay_min > p_relay_max)
            throw domain_error("user config: p_relay_min must lie in [0, p_relay_max]");
        if (!(rate_min >= 0.0) || !std::isfinite(rate_min))
            throw domain_error("user config: rate_min must be finite and nonnegative");
    }

    bool min_power_guard(const user_config &cfg, double c_th)
    {
        return cfg.p_user_min * cfg.budget.mean_gamma_ub() + cfg.p_relay_min * cfg.budget.mean_gamma_rb() >= c_th;
    }

    user_config with_derived_min_powers(user_config cfg, double c_th)
    {
        const double gub = cfg.budget.mean_gamma_ub(), grb = cfg.budget.mean_gamma_rb();
        const auto holds = [&](double t) { return (t * cfg.p_user_max) * gub + (t * cfg.p_relay_max) * grb >= c_th; };
        if (!holds(1.0))
            throw infeasible_error(infeasibility::power,
                                   "maximum powers cannot reach the outage threshold (p_user_max*gub + p_relay_max*grb < C_th)");
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 0.0; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            (holds(mid) ? hi : lo) = mid;
        }
        cfg.p_user_min = hi * cfg.p_user_max;
        cfg.p_relay_min = hi * cfg.p_relay_max;
        return cfg;
    }

    snr_triple snr_triple::mean(const link_budget &lb)
    {
        return {lb.mean_gamma_ub(), lb.mean_gamma_ur(), lb.mean_gamma_rb(), snr_source::mean};
    }

    snr_triple snr_triple::instantaneous(const link_budget &lb, double best_gain_sq)
    {
        if (!(best_gain_sq >= 0.0))
            throw domain_error("snr_triple: channel gain must be nonnegative");
        return {lb.mean_gamma_ub(), lb.alpha_ur * best_gain_sq / lb.sigma2_relay, lb.mean_gamma_rb(),
                snr_source::instantaneous};
    }

    double snr_af(double p_user, double p_relay, const snr_triple &s)
    {
        const double ub = p_user * s.gamma_ub, ur = p_user * s.gamma_ur, rb = p_relay * s.gamma_rb;
        return ub + ur * rb / (rb + ur + 1.0);
    }

    double snr_df(double p_user, double p_relay, const snr_triple &s)
    {
        return std::min(p_user * s.gamma_ub + p_relay * s.gamma_rb, p_user * s.gamma_ur);
    }

    double snr_for(relay_scheme scheme, double p_user, double p_relay, const snr_triple &s)
    {
        return scheme == relay_scheme::af ? snr_af(p_user, p_relay, s) : snr_df(p_user, p_relay, s);
    }

    double user_rate(double bandwidth, double snr) { return 0.5 * bandwidth * std::log2(1.0 + snr); }

    double region_ratio(double p_user, double p_relay, double c_th, double mean_gamma_ub, double mean_gamma_rb)
    {
        const double s = p_user * mean_gamma_ub, r = p_relay * mean_gamma_rb;
        const double den = (c_th + 1.0) * s + s * r;
        if (den <= 0.0)
            return std::numeric_limits<double>::infinity();
        return (c_th * c_th + c_th) / den;
    }

    region scheme_region(double p_user, double p_relay, double c_th, double mean_gamma_ub, double mean_gamma_rb)
    {
        if (!(p_user >= 0.0) || !(p_relay >= 0.0))
            throw domain_error("scheme_region: powers must be nonnegative");
        const double s = p_user * mean_gamma_ub, r = p_relay * mean_gamma_rb;
        if (s + r < c_th)
            throw domain_error("scheme_region: infeasible point (mean SNR sum below C_th)");
        return af_preferred(s, r, c_th) ? region::af : region::df;
    }

    namespace
    {
        bool in_df_region(double pu, double pr, double c_th, const snr_triple &s)
        {
            return !af_preferred(pu * s.gamma_ub, pr * s.gamma_rb, c_th);
        }

        struct df_solver
        {
            const user_config &cfg;
            const snr_triple &s;
            double c_th;

            // Largest p_user in the box with (p_user, p_relay) strictly inside the DF region.
            // NaN when none exists.
            double best_user_power(double pr) const
            {
                constexpr double nan = std::numeric_limits<double>::quiet_NaN();
                const double k = c_th * c_th + c_th;
                double pu = std::min(cfg.p_user_max, k / (s.gamma_ub * (c_th + 1.0 + pr * s.gamma_rb)));
                for (int it = 0; it < 64 && !in_df_region(pu, pr, c_th, s); ++it)
                    pu *= 1.0 - 1e-12;
                if (!in_df_region(pu, pr, c_th, s) || pu < cfg.p_user_min)
                    return nan;
                return pu;
            }

            double value(double pr, double &pu) const
            {
                pu = best_user_power(pr);
                if (std::isnan(pu))
                    return -std::numeric_limits<double>::infinity();
                return snr_df(pu, pr, s);
            }
        };
    }

    df_point solve_df_subproblem(const user_config &cfg, const snr_triple &s, double c_th)
    {
        const df_solver solver{cfg, s, c_th};
        const double pr_lo = cfg.p_relay_min, pr_hi = cfg.p_relay_max;
        df_point best{0.0, 0.0, -std::numeric_limits<double>::infinity()};
        const auto consider = [&](double pr)
        {
            if (!(pr >= pr_lo && pr <= pr_hi))
                return;
            double pu = 0.0;
            const double v = solver.value(pr, pu);
            if (v > best.snr || (v == best.snr && pr < best.p_relay))
                best = {pu, pr, v};
        };

        // Breakpoints of the 1D objective: box ends, where the p_user bound leaves the
        // box, and where the two branches of the min cross.
        consider(pr_lo);
        consider(pr_hi);
        const double k = c_th * c_th + c_th;
        const double gub = s.gamma_ub, grb = s.gamma_rb;
        if (grb > 0.0)
        {
            consider((k / (gub * cfg.p_user_max) - (c_th + 1.0)) / grb);
            if (cfg.p_user_min > 0.0)
                consider((k / (gub * cfg.p_user_min) - (c_th + 1.0)) / grb);
            // u = C+1+p_r grb on the bound branch: k/u + u - (C+1) = k r / u with r = gur/gub.
            const double b = c_th + 1.0, cq = k * (1.0 - s.gamma_ur / gub);
            const double disc = b * b - 4.0 * cq;
            if (disc >= 0.0)
            {
                const double sq = std::sqrt(disc);
                for (double u : {0.5 * (b + sq), 0.5 * (b - sq)})
                    consider((u - b) / grb);
            }
        }

        // Uniform sweep with golden-section refinement around the best sample.
        constexpr int samples = 512;
        const double step = (pr_hi - pr_lo) / samples;
        int best_i = -1;
        double best_v = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= samples; ++i)
        {
            const double pr = i == samples ? pr_hi : pr_lo + step * i;
            double pu = 0.0;
            const double v = solver.value(pr, pu);
            if (v > best_v)
            {
                best_v = v;
                best_i = i;
            }
            consider(pr);
        }
        if (best_i >= 0 && step > 0.0)
        {
            constexpr double inv_phi = 0.6180339887498949;
            double a = std::max(pr_lo, pr_lo + step * (best_i - 1)), d = std::min(pr_hi, pr_lo + step * (best_i + 1));
            double b = d - inv_phi * (d - a), c = a + inv_phi * (d - a);
            double pu = 0.0;
            double fb = solver.value(b, pu), fc = solver.value(c, pu);
            for (int it = 0; it < 100 && d - a > 1e-15 * std::max(1.0, std::abs(d)); ++it)
            {
                if (fb >= fc)
                {
                    d = c;
                    c = b;
                    fc = fb;
                    b = d - inv_phi * (d - a);
                    fb = solver.value(b, pu);
                }
                else
                {
                    a = b;
                    b = c;
                    fb = fc;
                    c = a + inv_phi * (d - a);
                    fc = solver.value(c, pu);
                }
            }
            consider(b);
            consider(c);
        }

        if (!std::isfinite(best.snr))
            throw domain_error("solve_df_subproblem: the DF region does not intersect the power box");
        return best;
    }

    power_decision optimize_powers(const user_config &cfg, const snr_triple &s, double c_th)
    {
        if (!min_power_guard(cfg, c_th))
            throw infeasible_error(infeasibility::power,
                                   "minimum powers do not reach the outage threshold (p_user_min*gub + p_relay_min*grb < C_th)");
        const double pu_max = cfg.p_user_max, pr_max = cfg.p_relay_max;
        const power_decision af_max{pu_max, pr_max, relay_scheme::af, snr_af(pu_max, pr_max, s)};

        // Max-power corner on the DF side: the whole box is DF.
        if (in_df_region(pu_max, pr_max, c_th, s))
            return {pu_max, pr_max, relay_scheme::df, snr_df(pu_max, pr_max, s)};

        // Min-power corner on the AF side: the whole box is AF.
        if (!in_df_region(cfg.p_user_min, cfg.p_relay_min, c_th, s))
            return af_max;

        df_point df;
        try
        {
            df = solve_df_subproblem(cfg, s, c_th);
        }
        catch (const domain_error &)
        {
            return af_max;
        }
        if (df.snr > af_max.snr)
            return {df.p_user, df.p_relay, relay_scheme::df, df.snr};
        return af_max;
    }

    namespace
    {
        double ordered_sum(std::span<const double> v)
        {
            double acc = 0.0;
            for (double x : v)
                acc += x;
            return acc;
        }

        // Smallest bandwidth whose rate reaches rate_min exactly in floating point.
        double bandwidth_need(double snr, double rate_min)
        {
            if (rate_min == 0.0)
                return 0.0;
            double b = 2.0 * rate_min / std::log2(1.0 + snr);
            while (user_rate(b, snr) < rate_min)
                b = std::nextafter(b, std::numeric_limits<double>::infinity());
            return b;
        }
    }

    bandwidth_allocation allocate_bandwidth(std::span<const double> snrs, std::span<const double> rate_mins,
                                            double total_bw)
    {
        if (snrs.empty() || snrs.size() != rate_mins.size())
            throw domain_error("allocate_bandwidth: need one rate floor per user and at least one user");
        if (!(total_bw > 0.0) || !std::isfinite(total_bw))
            throw domain_error("allocate_bandwidth: total bandwidth must be finite and positive");
        for (std::size_t k = 0; k < snrs.size(); ++k)
        {
            if (!(snrs[k] >= 0.0) || !std::isfinite(snrs[k]))
                throw domain_error("allocate_bandwidth: SNRs must be finite and nonnegative");
            if (!(rate_mins[k] >= 0.0) || !std::isfinite(rate_mins[k]))
                throw domain_error("allocate_bandwidth: rate floors must be finite and nonnegative");
            if (snrs[k] == 0.0 && rate_mins[k] > 0.0)
                throw infeasible_error(infeasibility::rate,
                                       "user " + std::to_string(k) + " has zero SNR but a positive rate floor");
        }

        bandwidth_allocation out;
        out.lead_user = static_cast<std::size_t>(std::max_element(snrs.begin(), snrs.end()) - snrs.begin());
        out.bandwidth.assign(snrs.size(), 0.0);
        double others = 0.0;
        for (std::size_t k = 0; k < snrs.size(); ++k)
        {
            if (k == out.lead_user)
                continue;
            out.bandwidth[k] = bandwidth_need(snrs[k], rate_mins[k]);
            others += out.bandwidth[k];
        }
        const std::size_t n = out.lead_user;
        double &bn = out.bandwidth[n];
        bn = total_bw - others;
        while (bn > 0.0 && ordered_sum(out.bandwidth) > total_bw)
            bn = std::nextafter(bn, 0.0);
        if (!(bn >= 0.0) || ordered_sum(out.bandwidth) > total_bw || user_rate(bn, snrs[n]) < rate_mins[n])
            throw infeasible_error(infeasibility::bandwidth,
                                   "residual bandwidth of lead user " + std::to_string(n) +
                                       " is below its own minimum need");
        return out;
    }

    allocation_result finalize_allocation(const system_config &sys, std::span<const power_decision> decisions,
                                          bandwidth_policy policy)
    {
        const std::size_t k_users = sys.users.size();
        if (decisions.size() != k_users)
            throw domain_error("finalize_allocation: one power decision per user required");
        allocation_result res;
        res.users.resize(k_users);
        std::vector<double> snrs(k_users), floors(k_users);
        for (std::size_t k = 0; k < k_users; ++k)
        {
            res.users[k].p_user = decisions[k].p_user;
            res.users[k].p_relay = decisions[k].p_relay;
            res.users[k].scheme = decisions[k].scheme;
            res.users[k].snr = decisions[k].snr;
            snrs[k] = decisions[k].snr;
            floors[k] = sys.users[k].rate_min;
        }

        std::vector<double> bw;
        try
        {
            if (policy == bandwidth_policy::optimal)
            {
                auto alloc = allocate_bandwidth(snrs, floors, sys.total_bw);
                bw = std::move(alloc.bandwidth);
                res.lead_user = alloc.lead_user;
            }
            else
            {
                bw.assign(k_users, sys.total_bw / static_cast<double>(k_users));
                res.lead_user = static_cast<std::size_t>(std::max_element(snrs.begin(), snrs.end()) - snrs.begin());
                for (std::size_t k = 0; k < k_users; ++k)
                    if (user_rate(bw[k], snrs[k]) < floors[k])
                        throw infeasible_error(infeasibility::rate,
                                               "user " + std::to_string(k) + " misses its rate floor with an equal share");
                while (ordered_sum(bw) > sys.total_bw)
                    for (auto &b : bw)
                        b = std::nextafter(b, 0.0);
            }
        }
        catch (const infeasible_error &e)
        {
            res.feasible = false;
            res.failure = e.kind();
            res.failure_detail = e.what();
            return res;
        }

        for (std::size_t k = 0; k < k_users; ++k)
        {
            res.users[k].bandwidth = bw[k];
            res.users[k].rate = user_rate(bw[k], snrs[k]);
            res.sum_rate += res.users[k].rate;
        }
        res.feasible = true;
        return res;
    }

    allocation_result solve_system(const system_config &sys, std::span<const double> ur_gains)
    {
        if (sys.users.empty())
            throw domain_error("solve_system: at least one user required");
        if (ur_gains.size() != sys.users.size())
            throw domain_error("solve_system: one channel gain per user required");
        if (!(sys.xi > 0.0))
            throw domain_error("solve_system: xi must be positive");
        const double c_th = std::exp2(2.0 * sys.xi) - 1.0;

        std::vector<power_decision> decisions(sys.users.size());
        for (std::size_t k = 0; k < sys.users.size(); ++k)
        {
            const auto &u = sys.users[k];
            u.validate();
            try
            {
                decisions[k] = optimize_powers(u, snr_triple::instantaneous(u.budget, ur_gains[k]), c_th);
            }
            catch (const infeasible_error &e)
            {
                allocation_result res;
                res.users.resize(sys.users.size());
                res.feasible = false;
                res.failure = e.kind();
                res.failure_detail = "user " + std::to_string(k) + ": " + e.what();
                return res;
            }
        }
        return finalize_allocation(sys, decisions, bandwidth_policy::optimal);
    }

    std::string audit_allocation(const system_config &sys, const allocation_result &result)
    {
        if (!result.feasible)
            return {};
        if (result.users.size() != sys.users.size())
            return "user count mismatch";
        double total = 0.0, sum_rate = 0.0;
        for (std::size_t k = 0; k < sys.users.size(); ++k)
        {
            const auto &u = result.users[k];
            const auto &c = sys.users[k];
            const std::string who = "user " + std::to_string(k) + ": ";
            if (!(u.bandwidth >= 0.0))
                return who + "negative bandwidth";
            if (u.rate != user_rate(u.bandwidth, u.snr))
                return who + "rate differs from 0.5*b*log2(1+snr)";
            if (u.rate < c.rate_min)
                return who + "rate below rate_min";
            if (u.p_user < c.p_user_min || u.p_user > c.p_user_max)
                return who + "user power outside its bounds";
            if (u.p_relay < c.p_relay_min || u.p_relay > c.p_relay_max)
                return who + "relay power outside its bounds";
            total += u.bandwidth;
            sum_rate += u.rate;
        }
        if (total > sys.total_bw)
            return "bandwidth sum exceeds total bandwidth";
        if (sum_rate != result.sum_rate)
            return "sum rate differs from the sum of user rates";
        return {};
    }
}
