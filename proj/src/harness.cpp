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

#include "farelay/harness.hpp"
#include "farelay/error.hpp"
#include "farelay/parallel.hpp"
#include "farelay/rng.hpp"

#include <algorithm>
#include <string>

namespace farelay
{
    namespace
    {
        constexpr std::uint64_t block_size = 1 << 15;

        // Stream tags for the trial-level randomness.
        constexpr std::uint64_t tag_gains = 0, tag_channel = 1, tag_powers = 2;

        bool is_positive_integer(double v) { return v >= 1.0 && v == std::floor(v) && v < 1e9; }

        void check_range(const std::array<double, 2> &r, const char *name)
        {
            if (!std::isfinite(r[0]) || !std::isfinite(r[1]) || r[0] > r[1])
                throw input_error(std::string("geometry.") + name + ": need finite [lo, hi] with lo <= hi");
        }
    }

    void geometry_ranges::validate() const
    {
        check_range(alpha_ur_db, "alpha_ur_db");
        check_range(alpha_ub_db, "alpha_ub_db");
        check_range(alpha_rb_db, "alpha_rb_db");
    }

    std::string_view to_string(benchmark_scheme s)
    {
        switch (s)
        {
        case benchmark_scheme::proposed:
            return "proposed";
        case benchmark_scheme::tas:
            return "tas";
        case benchmark_scheme::avg_bandwidth:
            return "avg_bandwidth";
        case benchmark_scheme::random_power:
            return "random_power";
        }
        return "proposed";
    }

    std::string_view to_string(sweep_variable v)
    {
        switch (v)
        {
        case sweep_variable::num_users:
            return "num_users";
        case sweep_variable::num_ports:
            return "num_ports";
        case sweep_variable::relay_power_max:
            return "relay_power_max";
        }
        return "num_users";
    }

    std::optional<benchmark_scheme> parse_benchmark_scheme(std::string_view name)
    {
        for (auto s : {benchmark_scheme::proposed, benchmark_scheme::tas, benchmark_scheme::avg_bandwidth,
                       benchmark_scheme::random_power})
            if (to_string(s) == name)
                return s;
        return std::nullopt;
    }

    std::optional<sweep_variable> parse_sweep_variable(std::string_view name)
    {
        for (auto v : {sweep_variable::num_users, sweep_variable::num_ports, sweep_variable::relay_power_max})
            if (to_string(v) == name)
                return v;
        return std::nullopt;
    }

    void sweep_spec::validate() const
    {
        if (values.empty())
            throw input_error("sweep.values: must be nonempty");
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            if (!std::isfinite(values[i]) || !(values[i] > 0.0))
                throw input_error("sweep.values[" + std::to_string(i) + "]: must be finite and positive");
            if (i > 0 && !(values[i] > values[i - 1]))
                throw input_error("sweep.values: must be strictly increasing");
            if (variable != sweep_variable::relay_power_max && !is_positive_integer(values[i]))
                throw input_error("sweep.values[" + std::to_string(i) + "]: must be a positive integer for " +
                                  std::string(to_string(variable)));
        }
        if (schemes.empty())
            throw input_error("sweep.schemes: must be nonempty");
        for (std::size_t i = 0; i < schemes.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (schemes[i] == schemes[j])
                    throw input_error("sweep.schemes: duplicate scheme " + std::string(to_string(schemes[i])));
    }

    correlation_matrix scenario::correlation_for(const port_grid &g) const
    {
        if (correlation && static_cast<std::size_t>(correlation->rows()) == g.ports())
            return correlation_matrix::from_entries(*correlation);
        return build_correlation(g);
    }

    void scenario::validate() const
    {
        if (users.empty())
            throw input_error("users: at least one user required");
        if (trials < 1)
            throw input_error("system.trials: must be at least 1");
        if (!(total_bw > 0.0) || !std::isfinite(total_bw))
            throw input_error("system.total_bw_hz: must be finite and positive");
        if (!(xi > 0.0) || !std::isfinite(xi))
            throw input_error("system.xi_bits: must be finite and positive");
        for (std::size_t k = 0; k < users.size(); ++k)
        {
            const auto &u = users[k];
            const std::string at = "users[" + std::to_string(k) + "]";
            try
            {
                u.budget.validate();
            }
            catch (const domain_error &e)
            {
                throw input_error(at + ": " + e.what());
            }
            if (!(u.p_user_max > 0.0) || !std::isfinite(u.p_user_max))
                throw input_error(at + ".p_user_max_w: must be finite and positive");
            if (!(u.p_relay_max > 0.0) || !std::isfinite(u.p_relay_max))
                throw input_error(at + ".p_relay_max_w: must be finite and positive");
            if (!(u.rate_min >= 0.0) || !std::isfinite(u.rate_min))
                throw input_error(at + ".rate_min_bps: must be finite and nonnegative");
            if (u.p_user_min && !(*u.p_user_min >= 0.0 && *u.p_user_min <= u.p_user_max))
                throw input_error(at + ".p_user_min_w: must lie in [0, p_user_max_w]");
            if (u.p_relay_min && !(*u.p_relay_min >= 0.0 && *u.p_relay_min <= u.p_relay_max))
                throw input_error(at + ".p_relay_min_w: must lie in [0, p_relay_max_w]");
        }
        if (correlation && static_cast<std::size_t>(correlation->rows()) != grid.ports())
            throw input_error("grid.correlation: must be " + std::to_string(grid.ports()) + "x" +
                              std::to_string(grid.ports()) + " for the configured grid");
        if (geometry)
            geometry->validate();
        if (!(copula.target_abs_error > 0.0 && copula.target_abs_error <= 0.1))
            throw input_error("copula.target_abs_error: must lie in (0, 0.1]");
        if (sweep)
            sweep->validate();
    }

    std::vector<cdf_row> empirical_best_gain_cdf(const correlation_matrix &corr, std::span<const double> xs,
                                                 std::uint64_t trials, std::uint64_t seed)
    {
        if (trials == 0)
            throw domain_error("empirical_best_gain_cdf: trials must be positive");
        for (double x : xs)
            if (std::isnan(x))
                throw domain_error("empirical_best_gain_cdf: x must not be NaN");
        const std::uint64_t blocks = (trials + block_size - 1) / block_size;
        std::vector<std::vector<std::uint64_t>> counts(blocks, std::vector<std::uint64_t>(xs.size(), 0));
        parallel::parallel_for(blocks, [&](std::size_t b)
                               {
            const std::uint64_t n = std::min(block_size, trials - b * block_size);
            auto rng = make_stream(seed, b);
            std::vector<double> gains(n);
            sample_best_gains(corr, rng, gains);
            for (std::size_t i = 0; i < xs.size(); ++i)
                counts[b][i] = static_cast<std::uint64_t>(
                    std::count_if(gains.begin(), gains.end(), [&](double g) { return g <= xs[i]; })); });

        std::vector<cdf_row> out(xs.size());
        const double nt = static_cast<double>(trials);
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            std::uint64_t c = 0;
            for (const auto &blk : counts)
                c += blk[i];
            const double p = static_cast<double>(c) / nt;
            out[i] = {xs[i], p, std::sqrt(p * (1.0 - p) / nt)};
        }
        return out;
    }

    empirical_estimate empirical_outage(const outage_query &q, const link_budget &lb, const correlation_matrix &corr,
                                        relay_scheme scheme, std::uint64_t trials, std::uint64_t seed)
    {
        if (trials == 0)
            throw domain_error("empirical_outage: trials must be positive");
        const double c = q.threshold();
        if (!relay_feasible(q.p_user * lb.mean_gamma_ub(), q.p_relay * lb.mean_gamma_rb(), c))
            return {1.0, 0.0};

        const std::uint64_t blocks = (trials + block_size - 1) / block_size;
        std::vector<std::uint64_t> counts(blocks, 0);
        parallel::parallel_for(blocks, [&](std::size_t b)
                               {
            const std::uint64_t n = std::min(block_size, trials - b * block_size);
            auto rng = make_stream(seed, b);
            std::vector<double> gains(n);
            sample_best_gains(corr, rng, gains);
            std::uint64_t hits = 0;
            for (double g : gains)
            {
                const double snr = snr_for(scheme, q.p_user, q.p_relay, snr_triple::instantaneous(lb, g));
                hits += 0.5 * std::log2(1.0 + snr) < q.xi;
            }
            counts[b] = hits; });

        std::uint64_t total = 0;
        for (auto v : counts)
            total += v;
        const double nt = static_cast<double>(trials);
        const double p = static_cast<double>(total) / nt;
        return {p, std::sqrt(p * (1.0 - p) / nt)};
    }

    trial_instance make_trial(const scenario &scen, const correlation_matrix &corr, std::uint64_t trial)
    {
        const std::size_t k_users = scen.user_count();
        const double c_th = scen.threshold();
        trial_instance inst;
        inst.system.total_bw = scen.total_bw;
        inst.system.xi = scen.xi;
        inst.system.users.resize(k_users);
        inst.ur_gains.resize(k_users);

        std::vector<link_budget> budgets(k_users);
        for (std::size_t k = 0; k < k_users; ++k)
            budgets[k] = scen.users[std::min(k, scen.users.size() - 1)].budget;

        if (scen.geometry)
        {
            const auto &g = *scen.geometry;
            std::vector<double> ur(k_users), ub(k_users), rb(k_users);
            const auto draw = [](random_stream &rng, const std::array<double, 2> &r)
            { return std::pow(10.0, (r[0] + (r[1] - r[0]) * uniform01(rng)) / 10.0); };
            for (std::size_t k = 0; k < k_users; ++k)
            {
                auto rng = make_stream(scen.seed, trial, tag_gains, k);
                ur[k] = draw(rng, g.alpha_ur_db);
                ub[k] = draw(rng, g.alpha_ub_db);
                rb[k] = draw(rng, g.alpha_rb_db);
            }
            std::sort(ur.begin(), ur.end());
            std::sort(ub.begin(), ub.end());
            std::sort(rb.begin(), rb.end());
            for (std::size_t k = 0; k < k_users; ++k)
            {
                budgets[k].alpha_ur = ur[k];
                budgets[k].alpha_ub = ub[k];
                budgets[k].alpha_rb = rb[k];
            }
        }

        for (std::size_t k = 0; k < k_users; ++k)
        {
            const auto &t = scen.users[std::min(k, scen.users.size() - 1)];
            user_config cfg;
            cfg.budget = budgets[k];
            cfg.p_user_max = t.p_user_max;
            cfg.p_relay_max = t.p_relay_max;
            cfg.rate_min = t.rate_min;
            if (!t.p_user_min || !t.p_relay_min)
            {
                try
                {
                    cfg = with_derived_min_powers(cfg, c_th);
                }
                catch (const infeasible_error &)
                {
                    // zero minimum powers fail the guard; the solver reports INFEASIBLE_POWER
                }
            }
            if (t.p_user_min)
                cfg.p_user_min = *t.p_user_min;
            if (t.p_relay_min)
                cfg.p_relay_min = *t.p_relay_min;
            inst.system.users[k] = cfg;

            auto rng = make_stream(scen.seed, trial, tag_channel, k);
            sample_best_gains(corr, rng, std::span<double>(&inst.ur_gains[k], 1));
        }
        return inst;
    }

    namespace
    {
        trial_outcome from_allocation(const allocation_result &res)
        {
            trial_outcome out;
            out.feasible = res.feasible;
            out.failure = res.failure;
            if (res.feasible)
            {
                out.sum_rate = res.sum_rate;
                out.rates.reserve(res.users.size());
                for (const auto &u : res.users)
                    out.rates.push_back(u.rate);
            }
            else
                out.rates.assign(res.users.size(), 0.0);
            return out;
        }

        trial_outcome infeasible_outcome(std::size_t k_users, infeasibility kind)
        {
            trial_outcome out;
            out.rates.assign(k_users, 0.0);
            out.failure = kind;
            return out;
        }
    }

    trial_outcome run_trial(const scenario &scen, benchmark_scheme scheme, std::uint64_t trial,
                            const correlation_matrix &fas_corr, const correlation_matrix &tas_corr)
    {
        const bool tas = scheme == benchmark_scheme::tas;
        const trial_instance inst = make_trial(scen, tas ? tas_corr : fas_corr, trial);
        const auto &sys = inst.system;
        const std::size_t k_users = sys.users.size();
        const double c_th = scen.threshold();

        if (scheme == benchmark_scheme::proposed || tas)
            return from_allocation(solve_system(sys, inst.ur_gains));

        std::vector<power_decision> decisions(k_users);
        for (std::size_t k = 0; k < k_users; ++k)
        {
            const auto &u = sys.users[k];
            if (!min_power_guard(u, c_th))
                return infeasible_outcome(k_users, infeasibility::power);
            const auto s = snr_triple::instantaneous(u.budget, inst.ur_gains[k]);
            if (scheme == benchmark_scheme::avg_bandwidth)
            {
                decisions[k] = optimize_powers(u, s, c_th);
                continue;
            }
            auto rng = make_stream(scen.seed, trial, tag_powers, k);
            const double pu = u.p_user_min + (u.p_user_max - u.p_user_min) * uniform01(rng);
            const double pr = u.p_relay_min + (u.p_relay_max - u.p_relay_min) * uniform01(rng);
            const auto sch = af_preferred(pu * s.gamma_ub, pr * s.gamma_rb, c_th) ? relay_scheme::af : relay_scheme::df;
            decisions[k] = {pu, pr, sch, snr_for(sch, pu, pr, s)};
        }
        const auto policy =
            scheme == benchmark_scheme::avg_bandwidth ? bandwidth_policy::equal : bandwidth_policy::optimal;
        return from_allocation(finalize_allocation(sys, decisions, policy));
    }

    rate_summary summarize(std::span<const trial_outcome> outcomes)
    {
        rate_summary s;
        double sum = 0.0;
        for (const auto &o : outcomes)
        {
            if (o.feasible)
            {
                ++s.feasible_trials;
                sum += o.sum_rate;
            }
            else
                ++s.infeasible_trials;
        }
        if (s.feasible_trials == 0)
            return s;
        const double n = static_cast<double>(s.feasible_trials);
        s.mean = sum / n;
        if (s.feasible_trials > 1)
        {
            double ss = 0.0;
            for (const auto &o : outcomes)
                if (o.feasible)
                    ss += (o.sum_rate - s.mean) * (o.sum_rate - s.mean);
            s.std_err = std::sqrt(ss / (n - 1.0) / n);
        }
        return s;
    }

    namespace
    {
        correlation_matrix tas_correlation()
        {
            return build_correlation(port_grid(1, 1, 0.0, 0.0));
        }
    }

    benchmark_result run_benchmark(const scenario &scen_in, benchmark_scheme scheme, std::uint64_t seed)
    {
        scenario scen = scen_in;
        scen.seed = seed;
        scen.validate();
        const auto fas = scen.correlation_for(scen.grid);
        const auto tas = tas_correlation();
        benchmark_result out{scheme, std::vector<trial_outcome>(scen.trials), {}};
        parallel::parallel_for(scen.trials, [&](std::size_t t)
                               { out.trials[t] = run_trial(scen, scheme, t, fas, tas); });
        out.summary = summarize(out.trials);
        return out;
    }

    scenario apply_sweep_value(const scenario &scen, sweep_variable variable, double value)
    {
        scenario out = scen;
        switch (variable)
        {
        case sweep_variable::num_users:
            if (!is_positive_integer(value))
                throw input_error("sweep: num_users values must be positive integers");
            out.num_users = static_cast<std::size_t>(value);
            break;
        case sweep_variable::num_ports:
        {
            if (!is_positive_integer(value))
                throw input_error("sweep: num_ports values must be positive integers");
            if (scen.correlation)
                throw input_error("sweep: num_ports cannot be combined with an explicit grid.correlation");
            const auto n = static_cast<std::size_t>(value);
            out.grid = port_grid(n, n, scen.grid.w1(), scen.grid.w2());
            break;
        }
        case sweep_variable::relay_power_max:
            if (!(value > 0.0) || !std::isfinite(value))
                throw input_error("sweep: relay_power_max values must be finite and positive");
            for (auto &u : out.users)
            {
                u.p_relay_max = value;
                if (u.p_relay_min && *u.p_relay_min > value)
                    throw input_error("sweep: relay_power_max value below a configured p_relay_min_w");
            }
            break;
        }
        return out;
    }

    sweep_table run_sweep(const scenario &scen, const sweep_spec &spec)
    {
        spec.validate();
        scen.validate();
        const std::size_t nv = spec.values.size(), ns = spec.schemes.size();
        const std::uint64_t nt = scen.trials;

        std::vector<scenario> variants;
        std::vector<correlation_matrix> corrs;
        variants.reserve(nv);
        corrs.reserve(nv);
        for (double v : spec.values)
        {
            variants.push_back(apply_sweep_value(scen, spec.variable, v));
            corrs.push_back(variants.back().correlation_for(variants.back().grid));
        }
        const auto tas = tas_correlation();

        std::vector<trial_outcome> outcomes(nv * ns * nt);
        parallel::parallel_for(nv * nt, [&](std::size_t item)
                               {
            const std::size_t v = item / nt;
            const std::uint64_t t = item % nt;
            for (std::size_t s = 0; s < ns; ++s)
                outcomes[(v * ns + s) * nt + t] = run_trial(variants[v], spec.schemes[s], t, corrs[v], tas); });

        sweep_table table;
        table.rows.reserve(outcomes.size());
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t s = 0; s < ns; ++s)
            {
                const std::span<const trial_outcome> block(outcomes.data() + (v * ns + s) * nt, nt);
                for (std::uint64_t t = 0; t < nt; ++t)
                    table.rows.push_back({spec.values[v], spec.schemes[s], t, block[t].sum_rate, block[t].feasible});
                table.summary.push_back({spec.values[v], spec.schemes[s], summarize(block)});
            }
        return table;
    }
}
