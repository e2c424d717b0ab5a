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

#include "farelay/error.hpp"
#include "farelay/outage.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace farelay
{
    struct user_config
    {
        link_budget budget;
        double p_user_max = 0.0;  // W
        double p_relay_max = 0.0; // W
        double p_user_min = 0.0;  // W
        double p_relay_min = 0.0; // W
        double rate_min = 0.0;    // bits/s

        void validate() const;
    };

    // Minimum powers as t * (P^U,max, P^R,max) with the smallest t in (0, 1] such that
    // t * (P^U,max gub + P^R,max grb) >= C_th (bisection). Throws
    // infeasible_error(power) if even t = 1 fails.
    user_config with_derived_min_powers(user_config cfg, double c_th);

    // True when p_user_min * gub + p_relay_min * grb >= C_th.
    bool min_power_guard(const user_config &cfg, double c_th);

    enum class snr_source
    {
        mean,
        instantaneous
    };

    // SNRs per watt. gamma_ub and gamma_rb are always means (statistical CSI at the relay);
    // gamma_ur is the mean or one fading realization, as tagged.
    struct snr_triple
    {
        double gamma_ub = 0.0;
        double gamma_ur = 0.0;
        double gamma_rb = 0.0;
        snr_source ur_source = snr_source::mean;

        static snr_triple mean(const link_budget &lb);
        static snr_triple instantaneous(const link_budget &lb, double best_gain_sq);
    };

    double snr_af(double p_user, double p_relay, const snr_triple &s);
    double snr_df(double p_user, double p_relay, const snr_triple &s);
    double snr_for(relay_scheme scheme, double p_user, double p_relay, const snr_triple &s);

    // Achievable half-duplex rate 0.5 * b * log2(1 + snr).
    double user_rate(double bandwidth, double snr);

    enum class region
    {
        af,
        df
    };

    // AF iff (C^2 + C) / ((C + 1) p_u gub + p_u gub p_r grb) <= 1, i.e. xi_AF <= xi_DF.
    // The point must satisfy p_u gub + p_r grb >= C_th.
    region scheme_region(double p_user, double p_relay, double c_th, double mean_gamma_ub, double mean_gamma_rb);

    // Ratio that decides the region (AF when <= 1). Infinite at p_user = 0.
    double region_ratio(double p_user, double p_relay, double c_th, double mean_gamma_ub, double mean_gamma_rb);

    struct power_decision
    {
        double p_user = 0.0;
        double p_relay = 0.0;
        relay_scheme scheme = relay_scheme::af;
        double snr = 0.0; // SNR of the chosen scheme at the chosen powers
    };

    struct df_point
    {
        double p_user = 0.0;
        double p_relay = 0.0;
        double snr = 0.0; // min(p_u gub + p_r grb, p_u gur)
    };

    // Best DF operating point inside the power box and the DF side of the selection
    // boundary. Requires the min-power corner on the DF side; throws domain_error otherwise.
    df_point solve_df_subproblem(const user_config &cfg, const snr_triple &s, double c_th);

    // Powers maximizing the selection-aware SNR of one user over the power box.
    power_decision optimize_powers(const user_config &cfg, const snr_triple &s, double c_th);

    struct bandwidth_allocation
    {
        std::vector<double> bandwidth; // Hz
        std::size_t lead_user = 0;     // highest SNR, smallest index on ties
    };

    // Every user except the lead gets exactly the bandwidth that meets its rate
    // floor; the lead gets the rest. Throws infeasible_error(bandwidth) if that
    // rest is below the lead's own need, infeasible_error(rate) for a zero SNR
    // with a positive floor.
    bandwidth_allocation allocate_bandwidth(std::span<const double> snrs, std::span<const double> rate_mins,
                                            double total_bw);

    struct system_config
    {
        std::vector<user_config> users;
        double total_bw = 0.0; // Hz
        double xi = 0.0;       // bits/s/Hz
    };

    struct user_allocation
    {
        double p_user = 0.0;
        double p_relay = 0.0;
        double bandwidth = 0.0;
        relay_scheme scheme = relay_scheme::af;
        double snr = 0.0;
        double rate = 0.0;
    };

    struct allocation_result
    {
        std::vector<user_allocation> users;
        std::size_t lead_user = 0;
        double sum_rate = 0.0;
        bool feasible = false;
        std::optional<infeasibility> failure;
        std::string failure_detail;
    };

    enum class bandwidth_policy
    {
        optimal,
        equal
    };

    // Bandwidth and rate bookkeeping for fixed per-user powers and schemes.
    allocation_result finalize_allocation(const system_config &sys, std::span<const power_decision> decisions,
                                          bandwidth_policy policy = bandwidth_policy::optimal);

    // Full sum-rate maximization: per-user power control, then closed-form bandwidth.
    // ur_gains holds the best-port gain |h^UR|^2 of each user.
    allocation_result solve_system(const system_config &sys, std::span<const double> ur_gains);

    // Exact re-check of every constraint of the sum-rate problem. Returns an empty
    // string when the result is consistent, otherwise the first violation.
    std::string audit_allocation(const system_config &sys, const allocation_result &result);
}
