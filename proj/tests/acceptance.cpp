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
#include "farelay/channel.hpp"
#include "farelay/error.hpp"
#include "farelay/harness.hpp"
#include "farelay/mvncdf.hpp"
#include "farelay/outage.hpp"
#include "farelay/parallel.hpp"
#include "farelay/rng.hpp"
#include "farelay/scenario.hpp"
#include "support/oracles.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace farelay;
namespace fs = std::filesystem;

namespace
{
    using clock_type = std::chrono::steady_clock;

    double seconds_since(clock_type::time_point t0)
    {
        return std::chrono::duration<double>(clock_type::now() - t0).count();
    }

    struct verdict
    {
        bool pass = true;
        std::ostringstream detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok && pass)
                detail << "first failure: " << what << "; ";
            pass = pass && ok;
        }
    };

    int failures = 0;

    void report(int id, const char *title, const std::function<void(verdict &)> &body)
    {
        verdict v;
        const auto t0 = clock_type::now();
        try
        {
            body(v);
        }
        catch (const std::exception &e)
        {
            v.pass = false;
            v.detail << "exception: " << e.what() << "; ";
        }
        std::printf("criterion %2d: %s  %s [%s%.2f s]\n", id, v.pass ? "PASS" : "FAIL", title, v.detail.str().c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
        failures += !v.pass;
    }

    link_budget unit_budget()
    {
        link_budget lb;
        lb.alpha_ur = lb.alpha_ub = lb.alpha_rb = lb.sigma2_relay = lb.sigma2_bs = 1.0;
        return lb;
    }

    double log_uniform(random_stream &rng, double lo, double hi) { return lo * std::pow(hi / lo, uniform01(rng)); }

    // --- 1 ---------------------------------------------------------------
    void orthant(verdict &v)
    {
        double worst = 0.0, slowest = 0.0;
        for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9})
        {
            Eigen::Matrix2d j;
            j << 1.0, rho, rho, 1.0;
            const auto corr = correlation_matrix::from_entries(j);
            const std::vector<double> b{0.0, 0.0};
            const auto t0 = clock_type::now();
            const auto est = mvn_cdf(corr, b);
            slowest = std::max(slowest, seconds_since(t0));
            const double err = std::abs(est.value - oracle::bivariate_orthant(rho));
            worst = std::max(worst, err);
            v.require(err <= 1e-3, "rho=" + std::to_string(rho));
        }
        v.require(slowest < 1.0, "runtime");
        v.detail << "max abs err " << worst << ", slowest point " << slowest << " s; ";
    }

    // --- 2 ---------------------------------------------------------------
    void degeneration(verdict &v)
    {
        const auto single = build_correlation(port_grid(1, 1, 0.0, 0.0));
        double worst1 = 0.0;
        for (int i = 0; i < 20; ++i)
        {
            const double x = 0.05 + 0.25 * i;
            const double err = std::abs(best_gain_cdf(x, single) + std::expm1(-x));
            worst1 = std::max(worst1, err);
            v.require(err <= 1e-9, "1x1 at x=" + std::to_string(x));
        }
        double worst_n = 0.0;
        for (int n : {2, 4})
        {
            const auto id = correlation_matrix::from_entries(Eigen::MatrixXd::Identity(n, n));
            for (double x : {0.1, 0.5, 1.0, 2.0, 4.0})
            {
                const double err = std::abs(best_gain_cdf(x, id) - std::pow(-std::expm1(-x), n));
                worst_n = std::max(worst_n, err);
                v.require(err <= 1e-3, "identity N=" + std::to_string(n));
            }
        }
        v.detail << "1x1 max err " << worst1 << ", identity max err " << worst_n << "; ";
    }

    // --- 3 ---------------------------------------------------------------
    void copula_vs_mc(verdict &v)
    {
        const auto t0 = clock_type::now();
        const auto corr = build_correlation(port_grid(4, 4, 1.0, 1.0));
        const std::vector<double> xs{0.25, 0.5, 1.0, 2.0, 4.0};
        const auto emp = empirical_best_gain_cdf(corr, xs, 1000000, 2024);
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            const double err = std::abs(best_gain_cdf(xs[i], corr) - emp[i].cdf);
            worst = std::max(worst, err);
            v.require(err <= 0.05, "x=" + std::to_string(xs[i]));
        }
        const double t = seconds_since(t0);
        v.require(t < 120.0, "runtime");
        v.detail << "max |copula - empirical| " << worst << "; ";
    }

    // --- 4 ---------------------------------------------------------------
    void piecewise(verdict &v)
    {
        const auto corr = build_correlation(port_grid(2, 2, 0.5, 0.5));
        auto lb = unit_budget();
        lb.alpha_ub = 0.8;
        lb.alpha_rb = 1.3;
        const double xi = 0.5;
        const double c = std::exp2(2.0 * xi) - 1.0;
        // p_u*0.8 crosses C at 1.25, p_u*0.8 + p_r*1.3 crosses C along a line through the grid.
        std::size_t n_inf = 0, n_zero = 0, n_mid = 0;
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 50; ++j)
            {
                const double pu = 0.02 + 2.0 * i / 49.0, pr = 0.02 + 1.5 * j / 49.0;
                const double s = pu * lb.alpha_ub, r = pr * lb.alpha_rb;
                const auto res = outage_probabilities({pu, pr, xi}, lb, corr);
                if (s + r <= c)
                {
                    ++n_inf;
                    v.require(res.op_af == 1.0 && res.op_df == 1.0, "infeasible point not exactly 1");
                    v.require(res.choice == selection::infeasible, "infeasible point not flagged");
                }
                else if (s >= c)
                {
                    ++n_zero;
                    v.require(res.op_af == 0.0, "AF point with nonpositive threshold not exactly 0");
                }
                else
                {
                    ++n_mid;
                    v.require(res.op_af > 0.0 && res.op_af < 1.0 && res.op_df > 0.0 && res.op_df < 1.0,
                              "interior point out of (0, 1)");
                }
            }
        v.require(n_inf > 0 && n_zero > 0 && n_mid > 0, "grid does not straddle both boundaries");
        v.detail << n_inf << " infeasible, " << n_zero << " AF-certain, " << n_mid << " interior points; ";
    }

    // --- 5 ---------------------------------------------------------------
    void selection_rays(verdict &v)
    {
        auto rng = make_stream(505);
        const auto corr = build_correlation(port_grid(2, 2, 1.0, 1.0));
        std::size_t with_all_three = 0;
        for (int ray = 0; ray < 100; ++ray)
        {
            link_budget lb = unit_budget();
            lb.alpha_ub = log_uniform(rng, 0.05, 5.0);
            lb.alpha_rb = log_uniform(rng, 0.05, 5.0);
            lb.alpha_ur = log_uniform(rng, 0.05, 5.0);
            const double xi = 0.1 + 1.4 * uniform01(rng);
            const double c = std::exp2(2.0 * xi) - 1.0;
            const double angle = 0.05 + 1.47 * uniform01(rng);
            const double du = std::cos(angle), dr = std::sin(angle);
            // t at which the ray leaves the infeasible set; walk out to several times past the AF boundary.
            const double t_feas = c / (du * lb.alpha_ub + dr * lb.alpha_rb);
            const double t_end = 40.0 * t_feas;
            int stage = 0;
            bool seen[3] = {false, false, false};
            for (int k = 0; k <= 120; ++k)
            {
                const double t = t_end * k / 120.0;
                const auto res = outage_probabilities({std::max(t * du, 1e-12), t * dr, xi}, lb, corr);
                const int now = res.choice == selection::infeasible ? 0 : res.choice == selection::df ? 1 : 2;
                seen[now] = true;
                v.require(now >= stage, "ray " + std::to_string(ray) + " interleaves at step " + std::to_string(k));
                stage = std::max(stage, now);
            }
            with_all_three += seen[0] && seen[1] && seen[2];
        }
        v.detail << with_all_three << "/100 rays visit all three blocks; ";
    }

    // --- 6 ---------------------------------------------------------------
    void bandwidth_lp(verdict &v)
    {
        auto rng = make_stream(606);
        int infeasible = 0;
        double worst = 0.0;
        for (int inst = 0; inst < 100; ++inst)
        {
            const std::size_t k = 1 + static_cast<std::size_t>(uniform01(rng) * 6);
            std::vector<double> snr(k), floors(k);
            for (std::size_t i = 0; i < k; ++i)
            {
                snr[i] = log_uniform(rng, 0.1, 100.0);
                floors[i] = 1e6 * uniform01(rng);
            }
            const double total = 1e6 + 9e6 * uniform01(rng);
            const auto lp = oracle::bandwidth_lp(snr, floors, total);
            try
            {
                const auto alloc = allocate_bandwidth(snr, floors, total);
                v.require(lp.status == oracle::lp_status::optimal, "LP says infeasible, closed form does not");
                double sum = 0.0;
                for (std::size_t i = 0; i < k; ++i)
                    sum += user_rate(alloc.bandwidth[i], snr[i]);
                const double rel = std::abs(sum - lp.value) / lp.value;
                worst = std::max(worst, rel);
                v.require(rel <= 1e-6, "sum rate mismatch");
            }
            catch (const infeasible_error &)
            {
                ++infeasible;
                v.require(lp.status == oracle::lp_status::infeasible, "closed form says infeasible, LP does not");
            }
        }
        v.require(infeasible > 0 && infeasible < 100, "instances not mixed");
        v.detail << infeasible << " infeasible instances, max rel diff " << worst << "; ";
    }

    // --- 7 ---------------------------------------------------------------
    void power_control(verdict &v)
    {
        auto rng = make_stream(707);
        int done = 0, prop1 = 0;
        double worst = 0.0;
        while (done < 100)
        {
            const auto inst = oracle::random_power_instance(rng);
            if (!inst)
                continue;
            const auto &cfg = inst->cfg;
            const auto d = optimize_powers(cfg, inst->s, inst->c_th);
            const double ours = snr_for(d.scheme, d.p_user, d.p_relay, inst->s);
            const double grid = oracle::power_grid_best(cfg, inst->s, inst->c_th, 400);
            worst = std::max(worst, (grid - ours) / grid);
            v.require(ours >= (1.0 - 1e-3) * grid, "below grid");
            const double su = cfg.p_user_max * inst->s.gamma_ub, sr = cfg.p_relay_max * inst->s.gamma_rb;
            const double c = inst->c_th;
            if (c * c + c > (c + 1.0) * su + su * sr)
            {
                ++prop1;
                v.require(d.p_user == cfg.p_user_max && d.p_relay == cfg.p_relay_max && d.scheme == relay_scheme::df,
                          "max corner in DF region but not returned");
            }
            ++done;
        }
        v.require(prop1 > 0, "no max-corner DF case sampled");
        v.detail << prop1 << " max-corner DF cases, worst shortfall " << worst << "; ";
    }

    // --- 8 ---------------------------------------------------------------
    void df_subproblem(verdict &v)
    {
        auto rng = make_stream(808);
        int done = 0;
        double worst = -std::numeric_limits<double>::infinity(), slowest = 0.0;
        while (done < 50)
        {
            const auto inst = oracle::random_power_instance(rng);
            if (!inst)
                continue;
            const auto &cfg = inst->cfg;
            const auto &s = inst->s;
            if (region_ratio(cfg.p_user_min, cfg.p_relay_min, inst->c_th, s.gamma_ub, s.gamma_rb) < 1.0)
                continue;
            const auto t0 = clock_type::now();
            const auto p = solve_df_subproblem(cfg, s, inst->c_th);
            slowest = std::max(slowest, seconds_since(t0));
            const double grid = oracle::df_grid_best(cfg, s, inst->c_th, 2000);
            const double gap = (grid - p.snr) / grid;
            worst = std::max(worst, gap);
            v.require(gap <= 1e-4, "shortfall vs grid");
            const double su = p.p_user * s.gamma_ub, sr = p.p_relay * s.gamma_rb, c = inst->c_th;
            v.require((c + 1.0) * su + su * sr <= c * c + c, "returned point violates the DF constraint");
            v.require(p.p_user >= cfg.p_user_min && p.p_user <= cfg.p_user_max && p.p_relay >= cfg.p_relay_min &&
                          p.p_relay <= cfg.p_relay_max,
                      "returned point outside the box");
            ++done;
        }
        v.require(slowest < 0.05, "runtime");
        v.detail << "worst relative shortfall " << worst << " (negative: solver above grid), slowest "
                 << slowest * 1e3 << " ms; ";
    }

    // --- 9 ---------------------------------------------------------------
    std::vector<rate_summary> proposed_means(const sweep_table &t)
    {
        std::vector<rate_summary> out;
        for (const auto &r : t.summary)
            if (r.scheme == benchmark_scheme::proposed)
                out.push_back(r.summary);
        return out;
    }

    void trends(verdict &v)
    {
        const auto t0 = clock_type::now();
        const fs::path dir(FARELAY_SCENARIO_DIR);
        const auto base = load_scenario(dir / "default.json");
        v.require(base.user_count() == 4 && base.grid.n1() == 4 && base.grid.n2() == 4 && base.trials == 100,
                  "default scenario is not the reference setup");
        v.require(std::abs(base.total_bw * base.xi - 5e5) < 1e-6, "B xi is not 0.5 Mbps");

        const auto prop = run_benchmark(base, benchmark_scheme::proposed, base.seed);
        for (auto scheme : {benchmark_scheme::tas, benchmark_scheme::avg_bandwidth, benchmark_scheme::random_power})
        {
            const auto other = run_benchmark(base, scheme, base.seed);
            v.require(prop.summary.mean > other.summary.mean,
                      "proposed does not beat " + std::string(to_string(scheme)));
            v.detail << to_string(scheme) << " " << other.summary.mean / 1e6 << " Mbps, ";
        }
        v.detail << "proposed " << prop.summary.mean / 1e6 << " Mbps; ";

        const auto ports = load_scenario(dir / "sweep_ports.json");
        const auto pt = run_sweep(ports, *ports.sweep);
        v.require(ports.sweep->values.front() == 1.0, "port sweep does not start at one port");
        const std::size_t trials = ports.trials;
        for (std::size_t k = 0; k < trials; ++k)
        {
            const auto &a = pt.rows[k];
            const auto &b = pt.rows[trials + k];
            v.require(a.scheme == benchmark_scheme::proposed && b.scheme == benchmark_scheme::tas, "row order");
            v.require(a.sum_rate == b.sum_rate, "proposed differs from tas at one port");
        }

        const auto relay = load_scenario(dir / "sweep_relay_power.json");
        const auto rt = run_sweep(relay, *relay.sweep);
        for (const auto *table : {&pt, &rt})
        {
            const auto m = proposed_means(*table);
            for (std::size_t i = 1; i < m.size(); ++i)
            {
                const double slack = 2.0 * std::hypot(m[i].std_err, m[i - 1].std_err);
                v.require(m[i].mean >= m[i - 1].mean - slack, "sweep mean decreases beyond 2 SE");
            }
        }
        v.require(seconds_since(t0) < 600.0, "runtime");
    }

    // --- 10 --------------------------------------------------------------
    struct cli_result
    {
        int code = -1;
        std::string out;
    };

    cli_result run_cli(const std::string &args, const fs::path &scratch)
    {
        const auto o = scratch / "out.csv";
        const std::string cmd = std::string("'") + FARELAY_CLI_PATH + "' " + args + " >'" + o.string() + "' 2>/dev/null";
        const int status = std::system(cmd.c_str());
        cli_result r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        std::ifstream in(o, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        r.out = s.str();
        return r;
    }

    void determinism(verdict &v)
    {
        const fs::path scratch = fs::temp_directory_path() / ("farelay_accept_" + std::to_string(::getpid()));
        fs::create_directories(scratch);
        const fs::path dir(FARELAY_SCENARIO_DIR);
        const std::string def = "'" + (dir / "default.json").string() + "'";
        const std::vector<std::string> commands{
            "op-surface " + def + " --steps 6",
            "validate " + def + " --trials 20000 --points 4",
            "optimize " + def + " --trial 3",
            "sweep '" + (dir / "sweep_users.json").string() + "'",
            "sweep '" + (dir / "sweep_ports.json").string() + "'",
            "sweep '" + (dir / "sweep_relay_power.json").string() + "'",
        };
        for (const auto &c : commands)
        {
            const auto ref = run_cli("--threads 1 " + c, scratch);
            v.require(ref.code == 0 || ref.code == 4, "command failed: " + c);
            v.require(!ref.out.empty(), "empty output: " + c);
            for (const char *threads : {"--threads 1 ", "--threads 8 ", "--threads 8 "})
            {
                const auto again = run_cli(threads + c, scratch);
                v.require(again.code == ref.code && again.out == ref.out, "output differs: " + std::string(threads) + c);
            }
        }
        std::error_code ec;
        fs::remove_all(scratch, ec);
        v.detail << commands.size() << " commands x 4 runs compared; ";
    }
}

int main()
{
    std::printf("simd kernels: %s\n", std::getenv("FARELAY_SIMD") ? std::getenv("FARELAY_SIMD") : "auto");
    report(1, "MVN bivariate orthant", orthant);
    report(2, "copula degeneration", degeneration);
    report(3, "copula vs Monte Carlo on the 4x4 grid", copula_vs_mc);
    report(4, "outage piecewise cases", piecewise);
    report(5, "selection map along rays", selection_rays);
    report(6, "bandwidth closed form vs LP", bandwidth_lp);
    report(7, "power control vs grid", power_control);
    report(8, "DF subproblem vs 2000x2000 grid", df_subproblem);
    report(9, "end-to-end trends", trends);
    report(10, "CLI determinism", determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
