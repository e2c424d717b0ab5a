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

#include "farelay/allocator.hpp"
#include "farelay/channel.hpp"
#include "farelay/outage.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace farelay
{
    // One user as written in a scenario. Minimum powers left empty are derived
    // from the maximum powers and the outage threshold.
    struct user_template
    {
        link_budget budget;
        double p_user_max = 0.1;
        double p_relay_max = 0.2;
        double rate_min = 0.0;
        std::optional<double> p_user_min;
        std::optional<double> p_relay_min;
    };

    // Large-scale gains drawn per trial, log-uniform over [lo, hi] dB, and sorted so the
    // average gain grows with the user index.
    struct geometry_ranges
    {
        std::array<double, 2> alpha_ur_db{-135.0, -125.0};
        std::array<double, 2> alpha_ub_db{-150.0, -140.0};
        std::array<double, 2> alpha_rb_db{-135.0, -125.0};

        void validate() const;
    };

    enum class benchmark_scheme
    {
        proposed,
        tas,
        avg_bandwidth,
        random_power
    };

    enum class sweep_variable
    {
        num_users,
        num_ports, // N1 = N2 = value, aperture unchanged
        relay_power_max
    };

    std::string_view to_string(benchmark_scheme s);
    std::string_view to_string(sweep_variable v);
    std::optional<benchmark_scheme> parse_benchmark_scheme(std::string_view name);
    std::optional<sweep_variable> parse_sweep_variable(std::string_view name);

    struct sweep_spec
    {
        sweep_variable variable = sweep_variable::num_users;
        std::vector<double> values;
        std::vector<benchmark_scheme> schemes{benchmark_scheme::proposed, benchmark_scheme::tas,
                                              benchmark_scheme::avg_bandwidth, benchmark_scheme::random_power};

        void validate() const;
    };

    struct scenario
    {
        std::vector<user_template> users;
        std::size_t num_users = 0; // 0: one user per template; more repeats the last template
        port_grid grid{4, 4, 1.0, 1.0};
        std::optional<Eigen::MatrixXd> correlation; // overrides the grid-derived J
        double total_bw = 5e6;                      // Hz
        double xi = 0.1;                            // bits/s/Hz
        std::uint64_t seed = 1;
        std::uint64_t trials = 100;
        std::optional<geometry_ranges> geometry;
        copula_config copula{};
        std::optional<sweep_spec> sweep;

        std::size_t user_count() const { return num_users ? num_users : users.size(); }
        double threshold() const { return std::exp2(2.0 * xi) - 1.0; }
        correlation_matrix correlation_for(const port_grid &g) const;

        void validate() const;
    };

    struct cdf_row
    {
        double x = 0.0;
        double cdf = 0.0;
        double std_err = 0.0; // binomial standard error
    };

    // Empirical CDF of the best-port gain at each x. Deterministic per seed and
    // independent of the thread count.
    std::vector<cdf_row> empirical_best_gain_cdf(const correlation_matrix &corr, std::span<const double> xs,
                                                 std::uint64_t trials, std::uint64_t seed);

    struct empirical_estimate
    {
        double value = 0.0;
        double std_err = 0.0;
    };

    // Fraction of sampled gains with 0.5*log2(1 + SNR) < xi for the given scheme, mean SNRs on
    // the UB and RB links. Infeasible powers give exactly 1 with zero variance.
    empirical_estimate empirical_outage(const outage_query &q, const link_budget &lb, const correlation_matrix &corr,
                                        relay_scheme scheme, std::uint64_t trials, std::uint64_t seed);

    // Per-trial system: user configs (min powers derived if needed) and best-port gains.
    struct trial_instance
    {
        system_config system;
        std::vector<double> ur_gains;
    };

    // Draws trial `trial` of the scenario with the given correlation; streams depend only on
    // (seed, trial, user), so every scheme and sweep value sees the same randomness.
    trial_instance make_trial(const scenario &scen, const correlation_matrix &corr, std::uint64_t trial);

    struct trial_outcome
    {
        double sum_rate = 0.0; // 0 when infeasible
        std::vector<double> rates;
        bool feasible = false;
        std::optional<infeasibility> failure;
    };

    trial_outcome run_trial(const scenario &scen, benchmark_scheme scheme, std::uint64_t trial,
                            const correlation_matrix &fas_corr, const correlation_matrix &tas_corr);

    struct rate_summary
    {
        double mean = 0.0; // over feasible trials
        double std_err = 0.0;
        std::uint64_t feasible_trials = 0;
        std::uint64_t infeasible_trials = 0;
    };

    rate_summary summarize(std::span<const trial_outcome> outcomes);

    struct benchmark_result
    {
        benchmark_scheme scheme;
        std::vector<trial_outcome> trials;
        rate_summary summary;
    };

    // All trials of one scheme; `seed` replaces the scenario seed.
    benchmark_result run_benchmark(const scenario &scen, benchmark_scheme scheme, std::uint64_t seed);

    struct sweep_row
    {
        double value;
        benchmark_scheme scheme;
        std::uint64_t trial;
        double sum_rate;
        bool feasible;
    };

    struct sweep_summary_row
    {
        double value;
        benchmark_scheme scheme;
        rate_summary summary;
    };

    struct sweep_table
    {
        std::vector<sweep_row> rows; // value, then scheme, then trial
        std::vector<sweep_summary_row> summary;
    };

    // Applies one sweep value to a copy of the scenario.
    scenario apply_sweep_value(const scenario &scen, sweep_variable variable, double value);

    sweep_table run_sweep(const scenario &scen, const sweep_spec &spec);
}
