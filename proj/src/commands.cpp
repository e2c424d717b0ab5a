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

#include "farelay/commands.hpp"
#include "farelay/csv.hpp"
#include "farelay/error.hpp"
#include "farelay/parallel.hpp"
#include "farelay/scenario.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace farelay::cli
{
    namespace
    {
        const user_template &pick_user(const scenario &scen, std::size_t user)
        {
            if (user >= scen.users.size())
                throw input_error("--user " + std::to_string(user) + ": scenario has " +
                                  std::to_string(scen.users.size()) + " user entries (0-based index)");
            return scen.users[user];
        }

        std::vector<double> linspace(std::pair<double, double> r, std::size_t steps)
        {
            std::vector<double> v(steps);
            for (std::size_t i = 0; i < steps; ++i)
                v[i] = steps == 1 ? r.first
                                  : r.first + (r.second - r.first) * static_cast<double>(i) / static_cast<double>(steps - 1);
            if (steps > 1)
                v.back() = r.second;
            return v;
        }

        void check_range(const std::pair<double, double> &r, const char *flag)
        {
            if (!(r.first > 0.0) || !(r.second >= r.first) || !std::isfinite(r.second))
                throw input_error(std::string(flag) + ": need 0 < lo <= hi");
        }
    }

    int op_surface(const scenario &scen, const op_surface_options &opt, std::ostream &out, std::ostream &)
    {
        const auto &u = pick_user(scen, opt.user);
        if (opt.steps < 1)
            throw input_error("--steps: must be at least 1");
        const auto pu = opt.pu_range.value_or(std::pair{0.01 * u.p_user_max, u.p_user_max});
        const auto pr = opt.pr_range.value_or(std::pair{0.01 * u.p_relay_max, u.p_relay_max});
        check_range(pu, "--pu-range");
        check_range(pr, "--pr-range");
        const double xi = opt.xi.value_or(scen.xi);
        if (!(xi > 0.0) || !std::isfinite(xi))
            throw input_error("--xi: must be finite and positive");

        const auto corr = scen.correlation_for(scen.grid);
        const auto pus = linspace(pu, opt.steps), prs = linspace(pr, opt.steps);
        const auto table = farelay::op_surface(pus, prs, xi, u.budget, corr, scen.copula);

        csv::writer w(out);
        w.header({"p_user_w", "p_relay_w", "xi", "op_af", "op_df", "selection"});
        for (const auto &p : table)
        {
            w.field(p.p_user).field(p.p_relay).field(p.xi).field(p.result.op_af).field(p.result.op_df);
            w.field(to_string(p.result.choice));
            w.end_row();
        }
        return ok;
    }

    int validate(const scenario &scen, const validate_options &opt, std::ostream &out, std::ostream &err)
    {
        const auto &u = pick_user(scen, opt.user);
        if (opt.points < 1)
            throw input_error("--points: must be at least 1");
        if (opt.trials < 10000)
            throw input_error("--trials: at least 10000 trials required");
        const auto corr = scen.correlation_for(scen.grid);

        constexpr double cdf_budget = 0.05;
        const auto xs = linspace({0.1, 5.0}, opt.points);
        const auto empirical = empirical_best_gain_cdf(corr, xs, opt.trials, substream_key(scen.seed, 1));
        std::vector<double> copula(xs.size());
        parallel::parallel_for(xs.size(), [&](std::size_t i)
                               {
            auto cfg = scen.copula;
            cfg.seed = substream_key(scen.seed, 2, i);
            copula[i] = best_gain_cdf(xs[i], corr, cfg); });

        csv::writer w(out);
        w.header({"section", "x", "p_user_w", "p_relay_w", "scheme", "analytic", "empirical", "std_err", "budget",
                  "pass"});
        bool all_pass = true;
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            const bool pass = std::abs(copula[i] - empirical[i].cdf) <= cdf_budget;
            all_pass = all_pass && pass;
            w.field("cdf").field(xs[i]).field("").field("").field("").field(copula[i]).field(empirical[i].cdf);
            w.field(empirical[i].std_err).field(cdf_budget).field(pass);
            w.end_row();
        }

        const double fractions[] = {1.0, 0.5, 0.25};
        std::uint64_t point = 0;
        for (double f : fractions)
        {
            const outage_query q{f * u.p_user_max, f * u.p_relay_max, scen.xi};
            auto cfg = scen.copula;
            cfg.seed = substream_key(scen.seed, 3, point);
            const auto analytic = outage_probabilities(q, u.budget, corr, cfg);
            for (auto scheme : {relay_scheme::af, relay_scheme::df})
            {
                const auto emp = empirical_outage(q, u.budget, corr, scheme, opt.trials, substream_key(scen.seed, 4, point));
                const double a = scheme == relay_scheme::af ? analytic.op_af : analytic.op_df;
                const double budget = std::max(0.05, 3.0 * emp.std_err);
                const bool pass = std::abs(a - emp.value) <= budget;
                all_pass = all_pass && pass;
                w.field("op").field("").field(q.p_user).field(q.p_relay).field(to_string(scheme)).field(a);
                w.field(emp.value).field(emp.std_err).field(budget).field(pass);
                w.end_row();
            }
            ++point;
        }
        if (!all_pass)
        {
            err << "validation failed: copula and empirical estimates disagree beyond budget\n";
            return validation_failed;
        }
        return ok;
    }

    int optimize(const scenario &scen, const optimize_options &opt, std::ostream &out, std::ostream &err)
    {
        const auto corr = scen.correlation_for(scen.grid);
        const auto inst = make_trial(scen, corr, opt.trial);
        const auto res = solve_system(inst.system, inst.ur_gains);
        if (!res.feasible)
        {
            err << "infeasible: " << res.failure_detail << '\n';
            return infeasible;
        }
        if (const auto issue = audit_allocation(inst.system, res); !issue.empty())
            throw numerical_error("allocation audit failed: " + issue);

        csv::writer w(out);
        w.header({"record", "user", "ur_gain", "p_user_w", "p_relay_w", "bandwidth_hz", "scheme", "snr", "rate_bps",
                  "best_user", "sum_rate_bps", "feasible"});
        for (std::size_t k = 0; k < res.users.size(); ++k)
        {
            const auto &r = res.users[k];
            w.field("user").field(static_cast<std::uint64_t>(k)).field(inst.ur_gains[k]).field(r.p_user);
            w.field(r.p_relay).field(r.bandwidth).field(to_string(r.scheme)).field(r.snr).field(r.rate);
            w.field("").field("").field("");
            w.end_row();
        }
        w.field("summary");
        for (int i = 0; i < 8; ++i)
            w.field("");
        w.field(static_cast<std::uint64_t>(res.lead_user)).field(res.sum_rate).field(res.feasible);
        w.end_row();
        return ok;
    }

    int sweep(const scenario &scen, const sweep_options &opt, std::ostream &out, std::ostream &err)
    {
        if (!scen.sweep)
            throw input_error("missing key 'sweep': the sweep command needs a sweep section");
        const auto table = run_sweep(scen, *scen.sweep);

        csv::writer w(out);
        w.header({"sweep_value", "scheme", "trial", "sum_rate_bps", "feasible"});
        for (const auto &r : table.rows)
        {
            w.field(r.value).field(to_string(r.scheme)).field(r.trial).field(r.sum_rate).field(r.feasible);
            w.end_row();
        }

        std::uint64_t excluded = 0;
        for (const auto &s : table.summary)
            excluded += s.summary.infeasible_trials;
        if (excluded)
            err << "excluded " << excluded << " infeasible trials from the mean sum rates\n";

        if (opt.summary)
        {
            std::ofstream f(*opt.summary, std::ios::binary);
            if (!f)
                throw input_error("cannot write summary file '" + opt.summary->string() + "'");
            csv::writer s(f);
            s.header({"sweep_value", "scheme", "mean_sum_rate_bps", "std_err_bps", "feasible_trials",
                      "infeasible_trials"});
            for (const auto &row : table.summary)
            {
                s.field(row.value).field(to_string(row.scheme)).field(row.summary.mean).field(row.summary.std_err);
                s.field(row.summary.feasible_trials).field(row.summary.infeasible_trials);
                s.end_row();
            }
        }
        return ok;
    }

    namespace
    {
        std::pair<double, double> parse_range(const std::string &text, const char *flag)
        {
            const auto colon = text.find(':');
            if (colon == std::string::npos)
                throw input_error(std::string(flag) + ": expected lo:hi, got '" + text + "'");
            const auto parse = [&](std::string_view s)
            {
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
                if (ec != std::errc() || ptr != s.data() + s.size())
                    throw input_error(std::string(flag) + ": cannot parse number '" + std::string(s) + "'");
                return v;
            };
            const std::string_view sv(text);
            return {parse(sv.substr(0, colon)), parse(sv.substr(colon + 1))};
        }
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Outage analysis and resource allocation for fluid-antenna relay networks", "farelay"};
        app.require_subcommand(1);
        app.fallthrough();

        unsigned threads = 0;
        std::string out_path;
        app.add_option("--threads", threads, "Worker threads (default: machine parallelism)");
        app.add_option("--out", out_path, "Write CSV to this file instead of stdout");

        std::string scenario_path;
        const auto add_scenario = [&](CLI::App *cmd)
        { cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required(); };

        auto *cmd_surface = app.add_subcommand("op-surface", "Outage probabilities and AF/DF selection over a power grid");
        add_scenario(cmd_surface);
        std::string pu_range, pr_range;
        op_surface_options surface_opt;
        double xi_flag = 0.0;
        cmd_surface->add_option("--pu-range", pu_range, "User power range lo:hi in watts");
        cmd_surface->add_option("--pr-range", pr_range, "Relay power range lo:hi in watts");
        cmd_surface->add_option("--steps", surface_opt.steps, "Grid points per axis")->capture_default_str();
        auto *xi_opt = cmd_surface->add_option("--xi", xi_flag, "Rate threshold in bits/s/Hz (default: scenario)");
        cmd_surface->add_option("--user", surface_opt.user, "0-based user entry")->capture_default_str();

        auto *cmd_validate = app.add_subcommand("validate", "Copula CDF and outage probabilities against Monte Carlo");
        add_scenario(cmd_validate);
        validate_options validate_opt;
        cmd_validate->add_option("--trials", validate_opt.trials, "Monte Carlo trials")->capture_default_str();
        cmd_validate->add_option("--points", validate_opt.points, "CDF evaluation points on [0.1, 5]")
            ->capture_default_str();
        cmd_validate->add_option("--user", validate_opt.user, "0-based user entry")->capture_default_str();

        auto *cmd_optimize = app.add_subcommand("optimize", "Sum-rate optimal powers, schemes and bandwidths");
        add_scenario(cmd_optimize);
        optimize_options optimize_opt;
        cmd_optimize->add_option("--trial", optimize_opt.trial, "Channel realization index")->capture_default_str();

        auto *cmd_sweep = app.add_subcommand("sweep", "Benchmark sum rates along the scenario's sweep axis");
        add_scenario(cmd_sweep);
        std::string summary_path;
        cmd_sweep->add_option("--summary", summary_path, "Also write per-value means and standard errors here");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &e)
        {
            app.exit(e, out, err);
            return ok;
        }
        catch (const CLI::CallForAllHelp &e)
        {
            app.exit(e, out, err);
            return ok;
        }
        catch (const CLI::ParseError &e)
        {
            app.exit(e, out, err);
            return input;
        }

        try
        {
            parallel::set_threads(threads);
            const scenario scen = load_scenario(scenario_path);

            std::ostringstream buffer;
            int code = ok;
            if (cmd_surface->parsed())
            {
                if (!pu_range.empty())
                    surface_opt.pu_range = parse_range(pu_range, "--pu-range");
                if (!pr_range.empty())
                    surface_opt.pr_range = parse_range(pr_range, "--pr-range");
                if (xi_opt->count())
                    surface_opt.xi = xi_flag;
                code = op_surface(scen, surface_opt, buffer, err);
            }
            else if (cmd_validate->parsed())
                code = validate(scen, validate_opt, buffer, err);
            else if (cmd_optimize->parsed())
                code = optimize(scen, optimize_opt, buffer, err);
            else
            {
                sweep_options so;
                if (!summary_path.empty())
                    so.summary = summary_path;
                code = sweep(scen, so, buffer, err);
            }

            if (out_path.empty())
                out << buffer.str();
            else
            {
                std::ofstream f(out_path, std::ios::binary);
                if (!f || !(f << buffer.str()))
                    throw input_error("cannot write output file '" + out_path + "'");
            }
            return code;
        }
        catch (const input_error &e)
        {
            err << "input error: " << e.what() << '\n';
            return input;
        }
        catch (const domain_error &e)
        {
            err << "input error: " << e.what() << '\n';
            return input;
        }
        catch (const infeasible_error &e)
        {
            err << "infeasible: " << e.what() << '\n';
            return infeasible;
        }
        catch (const numerical_error &e)
        {
            err << "numerical error: " << e.what() << '\n';
            return numerical;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return unexpected;
        }
    }
}
