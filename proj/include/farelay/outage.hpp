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
#include "farelay/mvncdf.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace farelay
{
    // Large-scale gains (linear) and noise powers (W) of one user/relay pair.
    struct link_budget
    {
        double alpha_ur = 1.0;
        double alpha_ub = 1.0;
        double alpha_rb = 1.0;
        double sigma2_relay = 1.0;
        double sigma2_bs = 1.0;

        // Mean SNR per watt of the direct and relay-to-BS links (unit-mean fading).
        double mean_gamma_ub() const { return alpha_ub / sigma2_bs; }
        double mean_gamma_rb() const { return alpha_rb / sigma2_bs; }
        double mean_gamma_ur() const { return alpha_ur / sigma2_relay; }

        void validate() const;
    };

    struct outage_query
    {
        double p_user = 0.0;  // W
        double p_relay = 0.0; // W
        double xi = 0.0;      // rate threshold, bits/s/Hz, half-duplex: 0.5 log2(1 + SNR) < xi

        double threshold() const { return std::exp2(2.0 * xi) - 1.0; }
    };

    enum class relay_scheme
    {
        af,
        df
    };

    enum class selection
    {
        af,
        df,
        infeasible
    };

    std::string_view to_string(relay_scheme s);
    std::string_view to_string(selection s);

    struct outage_result
    {
        double op_af = 1.0;
        double op_df = 1.0;
        selection choice = selection::infeasible;
    };

    // Engine settings for the copula CDF.
    struct copula_config
    {
        double target_abs_error = 1e-4;
        std::uint64_t max_samples = 2000000;
        std::uint64_t seed = 0;
    };

    // Mean-SNR sum p_u*gub + p_r*grb must exceed C_th for any chance of success.
    inline bool relay_feasible(double snr_ub, double snr_rb, double c_th) { return snr_ub + snr_rb > c_th; }

    // True when xi_AF <= xi_DF, written without division:
    // C_th^2 + C_th <= (C_th + 1) S + S R  with S = p_u*gub, R = p_r*grb.
    // Equal outage probabilities prefer AF.
    inline bool af_preferred(double snr_ub, double snr_rb, double c_th)
    {
        return c_th * c_th + c_th <= (c_th + 1.0) * snr_ub + snr_ub * snr_rb;
    }

    // Gaussian-copula CDF of the best-port gain max_l |h_l|^2 with Exp(1) marginals.
    mvn_estimate best_gain_cdf_estimate(double x, const correlation_matrix &corr, const copula_config &cfg = {});
    double best_gain_cdf(double x, const correlation_matrix &corr, const copula_config &cfg = {});

    // |h^UR|^2 below which AF relaying is in outage. May be negative.
    double xi_af(const outage_query &q, const link_budget &lb);

    // |h^UR|^2 below which DF relaying is in outage.
    double xi_df(const outage_query &q, const link_budget &lb);

    outage_result outage_probabilities(const outage_query &q, const link_budget &lb, const correlation_matrix &corr,
                                       const copula_config &cfg = {});

    struct op_surface_point
    {
        double p_user;
        double p_relay;
        double xi;
        outage_result result;
    };

    // outage_probabilities over the Cartesian grid p_users x p_relays (p_user outer).
    // Point i uses the engine seed substream_key(cfg.seed, i).
    std::vector<op_surface_point> op_surface(std::span<const double> p_users, std::span<const double> p_relays,
                                             double xi, const link_budget &lb, const correlation_matrix &corr,
                                             const copula_config &cfg = {});
}
