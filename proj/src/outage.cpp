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

#include "farelay/outage.hpp"
#include "farelay/error.hpp"
#include "farelay/normal.hpp"
#include "farelay/parallel.hpp"

#include <algorithm>
#include <string>

namespace farelay
{
    void link_budget::validate() const
    {
        const auto positive = [](double v, const char *name)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw domain_error(std::string("link budget: ") + name + " must be finite and positive");
        };
        positive(alpha_ur, "alpha_ur");
        positive(alpha_ub, "alpha_ub");
        positive(alpha_rb, "alpha_rb");
        positive(sigma2_relay, "sigma2_relay");
        positive(sigma2_bs, "sigma2_bs");
    }

    std::string_view to_string(relay_scheme s) { return s == relay_scheme::af ? "AF" : "DF"; }

    std::string_view to_string(selection s)
    {
        switch (s)
        {
        case selection::af:
            return "AF";
        case selection::df:
            return "DF";
        case selection::infeasible:
            return "INFEASIBLE";
        }
        return "INFEASIBLE";
    }

    mvn_estimate best_gain_cdf_estimate(double x, const correlation_matrix &corr, const copula_config &cfg)
    {
        if (!(x >= 0.0))
            throw domain_error("best_gain_cdf: x must be nonnegative, got " + std::to_string(x));
        if (x == 0.0)
            return {0.0, 0.0, 0, true};

        constexpr double lo = 1e-12, hi = 1.0 - 1e-12;
        const double marginal = std::clamp(-std::expm1(-x), lo, hi);
        const double limit = std_normal_quantile(marginal);
        std::vector<double> limits(corr.dim(), limit);
        return mvn_cdf(corr, limits, {cfg.target_abs_error, cfg.max_samples, cfg.seed});
    }

    double best_gain_cdf(double x, const correlation_matrix &corr, const copula_config &cfg)
    {
        return best_gain_cdf_estimate(x, corr, cfg).value;
    }

    namespace
    {
        void check_query(const outage_query &q)
        {
            if (!(q.p_user > 0.0) || !std::isfinite(q.p_user))
                throw domain_error("outage query: p_user must be positive");
            if (!(q.p_relay >= 0.0) || !std::isfinite(q.p_relay))
                throw domain_error("outage query: p_relay must be nonnegative");
            if (!(q.xi > 0.0) || !std::isfinite(q.xi))
                throw domain_error("outage query: xi must be positive");
        }
    }

    double xi_af(const outage_query &q, const link_budget &lb)
    {
        check_query(q);
        const double c = q.threshold();
        const double s = q.p_user * lb.mean_gamma_ub();
        const double r = q.p_relay * lb.mean_gamma_rb();
        const double margin = s + r - c;
        if (!(margin > 0.0))
            throw domain_error("xi_af: mean SNR sum does not exceed the outage threshold (infeasible point)");
        return lb.sigma2_relay * (r + 1.0) * (c - s) / (lb.alpha_ur * q.p_user * margin);
    }

    double xi_df(const outage_query &q, const link_budget &lb)
    {
        check_query(q);
        return lb.sigma2_relay * q.threshold() / (lb.alpha_ur * q.p_user);
    }

    outage_result outage_probabilities(const outage_query &q, const link_budget &lb, const correlation_matrix &corr,
                                       const copula_config &cfg)
    {
        check_query(q);
        const double c = q.threshold();
        const double s = q.p_user * lb.mean_gamma_ub();
        const double r = q.p_relay * lb.mean_gamma_rb();
        if (!relay_feasible(s, r, c))
            return {1.0, 1.0, selection::infeasible};

        const double x_af = xi_af(q, lb);
        const double x_df = xi_df(q, lb);
        outage_result out;
        out.op_af = x_af <= 0.0 ? 0.0 : best_gain_cdf(x_af, corr, cfg);
        out.op_df = best_gain_cdf(x_df, corr, cfg);

        // The copula CDF is strictly increasing on [0, inf), so the sign of
        // F(xi_DF) - F(xi_AF) is the sign of xi_DF - xi_AF. The estimates are
        // reported in that order so they never contradict the selection.
        const bool af = af_preferred(s, r, c);
        out.choice = af ? selection::af : selection::df;
        const double lo = std::min(out.op_af, out.op_df), hi = std::max(out.op_af, out.op_df);
        out.op_af = af ? lo : hi;
        out.op_df = af ? hi : lo;
        return out;
    }

    std::vector<op_surface_point> op_surface(std::span<const double> p_users, std::span<const double> p_relays,
                                             double xi, const link_budget &lb, const correlation_matrix &corr,
                                             const copula_config &cfg)
    {
        if (p_users.empty() || p_relays.empty())
            throw domain_error("op_surface: empty power grid");
        std::vector<op_surface_point> out(p_users.size() * p_relays.size());
        parallel::parallel_for(out.size(), [&](std::size_t i)
                               {
            const double pu = p_users[i / p_relays.size()];
            const double pr = p_relays[i % p_relays.size()];
            copula_config point_cfg = cfg;
            point_cfg.seed = substream_key(cfg.seed, i);
            out[i] = {pu, pr, xi, outage_probabilities({pu, pr, xi}, lb, corr, point_cfg)}; });
        return out;
    }
}
