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

#include "farelay/scenario.hpp"
#include "farelay/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

namespace farelay
{
    using json = nlohmann::json;

    double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

    namespace
    {
        std::string join(const std::string &path, const std::string &key)
        {
            return path.empty() ? key : path + "." + key;
        }

        const json &require_object(const json &j, const std::string &path)
        {
            if (!j.is_object())
                throw input_error(path + ": expected an object");
            return j;
        }

        void reject_unknown(const json &obj, const std::string &path, std::initializer_list<std::string_view> allowed)
        {
            for (auto it = obj.begin(); it != obj.end(); ++it)
                if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
                    throw input_error("unknown key '" + join(path, it.key()) + "'");
        }

        const json *find(const json &obj, const char *key)
        {
            auto it = obj.find(key);
            return it == obj.end() ? nullptr : &*it;
        }

        double number_at(const json &v, const std::string &path)
        {
            if (!v.is_number())
                throw input_error(path + ": expected a number");
            const double d = v.get<double>();
            if (!std::isfinite(d))
                throw input_error(path + ": must be finite");
            return d;
        }

        double number(const json &obj, const char *key, const std::string &path)
        {
            const json *v = find(obj, key);
            if (!v)
                throw input_error("missing key '" + join(path, key) + "'");
            return number_at(*v, join(path, key));
        }

        double positive(const json &obj, const char *key, const std::string &path)
        {
            const double d = number(obj, key, path);
            if (!(d > 0.0))
                throw input_error(join(path, key) + ": must be positive");
            return d;
        }

        double nonnegative(const json &obj, const char *key, const std::string &path)
        {
            const double d = number(obj, key, path);
            if (!(d >= 0.0))
                throw input_error(join(path, key) + ": must be nonnegative");
            return d;
        }

        std::uint64_t unsigned_integer(const json &obj, const char *key, const std::string &path)
        {
            const json *v = find(obj, key);
            if (!v)
                throw input_error("missing key '" + join(path, key) + "'");
            if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<long long>() < 0))
                throw input_error(join(path, key) + ": expected a nonnegative integer");
            return v->get<std::uint64_t>();
        }

        std::array<double, 2> range(const json &obj, const char *key, const std::string &path,
                                    std::array<double, 2> fallback)
        {
            const json *v = find(obj, key);
            if (!v)
                return fallback;
            const std::string at = join(path, key);
            if (!v->is_array() || v->size() != 2)
                throw input_error(at + ": expected [lo, hi]");
            return {number_at((*v)[0], at + "[0]"), number_at((*v)[1], at + "[1]")};
        }

        void parse_grid(const json &j, scenario &s)
        {
            const std::string path = "grid";
            require_object(j, path);
            reject_unknown(j, path, {"n1", "n2", "w1", "w2", "correlation"});
            const auto n1 = unsigned_integer(j, "n1", path), n2 = unsigned_integer(j, "n2", path);
            if (n1 < 1 || n2 < 1)
                throw input_error("grid.n1, grid.n2: must be at least 1");
            if (n1 * n2 > 4096)
                throw input_error("grid: at most 4096 ports supported");
            s.grid = port_grid(n1, n2, nonnegative(j, "w1", path), nonnegative(j, "w2", path));

            if (const json *c = find(j, "correlation"))
            {
                const std::size_t n = s.grid.ports();
                if (!c->is_array() || c->size() != n)
                    throw input_error("grid.correlation: expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                      " array of rows");
                Eigen::MatrixXd m(n, n);
                for (std::size_t r = 0; r < n; ++r)
                {
                    const std::string row = "grid.correlation[" + std::to_string(r) + "]";
                    if (!(*c)[r].is_array() || (*c)[r].size() != n)
                        throw input_error(row + ": expected " + std::to_string(n) + " entries");
                    for (std::size_t col = 0; col < n; ++col)
                        m(r, col) = number_at((*c)[r][col], row + "[" + std::to_string(col) + "]");
                }
                try
                {
                    (void)correlation_matrix::from_entries(m);
                }
                catch (const domain_error &e)
                {
                    throw input_error(std::string("grid.correlation: ") + e.what());
                }
                s.correlation = std::move(m);
            }
        }

        void parse_system(const json &j, scenario &s)
        {
            const std::string path = "system";
            require_object(j, path);
            reject_unknown(j, path, {"total_bw_hz", "xi_bits", "seed", "trials", "num_users"});
            s.total_bw = positive(j, "total_bw_hz", path);
            s.xi = positive(j, "xi_bits", path);
            s.seed = unsigned_integer(j, "seed", path);
            s.trials = unsigned_integer(j, "trials", path);
            if (s.trials < 1)
                throw input_error("system.trials: must be at least 1");
            if (find(j, "num_users"))
            {
                s.num_users = unsigned_integer(j, "num_users", path);
                if (s.num_users < 1)
                    throw input_error("system.num_users: must be at least 1");
            }
        }

        user_template parse_user(const json &j, const std::string &path)
        {
            require_object(j, path);
            reject_unknown(j, path,
                           {"alpha_ur", "alpha_ub", "alpha_rb", "sigma2_relay_dbm", "sigma2_bs_dbm", "p_user_max_w",
                            "p_relay_max_w", "rate_min_bps", "p_user_min_w", "p_relay_min_w"});
            user_template u;
            u.budget.alpha_ur = positive(j, "alpha_ur", path);
            u.budget.alpha_ub = positive(j, "alpha_ub", path);
            u.budget.alpha_rb = positive(j, "alpha_rb", path);
            u.budget.sigma2_relay = dbm_to_watts(number(j, "sigma2_relay_dbm", path));
            u.budget.sigma2_bs = dbm_to_watts(number(j, "sigma2_bs_dbm", path));
            if (!(u.budget.sigma2_relay > 0.0) || !(u.budget.sigma2_bs > 0.0))
                throw input_error(path + ": noise powers underflow to zero watts");
            u.p_user_max = positive(j, "p_user_max_w", path);
            u.p_relay_max = positive(j, "p_relay_max_w", path);
            u.rate_min = nonnegative(j, "rate_min_bps", path);
            if (find(j, "p_user_min_w"))
                u.p_user_min = nonnegative(j, "p_user_min_w", path);
            if (find(j, "p_relay_min_w"))
                u.p_relay_min = nonnegative(j, "p_relay_min_w", path);
            return u;
        }

        geometry_ranges parse_geometry(const json &j)
        {
            const std::string path = "geometry";
            require_object(j, path);
            reject_unknown(j, path, {"alpha_ur_db", "alpha_ub_db", "alpha_rb_db"});
            geometry_ranges g;
            g.alpha_ur_db = range(j, "alpha_ur_db", path, g.alpha_ur_db);
            g.alpha_ub_db = range(j, "alpha_ub_db", path, g.alpha_ub_db);
            g.alpha_rb_db = range(j, "alpha_rb_db", path, g.alpha_rb_db);
            return g;
        }

        copula_config parse_copula(const json &j)
        {
            const std::string path = "copula";
            require_object(j, path);
            reject_unknown(j, path, {"target_abs_error", "max_samples"});
            copula_config c;
            if (find(j, "target_abs_error"))
                c.target_abs_error = positive(j, "target_abs_error", path);
            if (find(j, "max_samples"))
                c.max_samples = unsigned_integer(j, "max_samples", path);
            return c;
        }

        sweep_spec parse_sweep(const json &j)
        {
            const std::string path = "sweep";
            require_object(j, path);
            reject_unknown(j, path, {"variable", "values", "schemes"});
            sweep_spec sp;
            const json *var = find(j, "variable");
            if (!var)
                throw input_error("missing key 'sweep.variable'");
            if (!var->is_string())
                throw input_error("sweep.variable: expected a string");
            const auto parsed = parse_sweep_variable(var->get<std::string>());
            if (!parsed)
                throw input_error("sweep.variable: unknown sweep variable '" + var->get<std::string>() +
                                  "' (expected num_users, num_ports or relay_power_max)");
            sp.variable = *parsed;

            const json *vals = find(j, "values");
            if (!vals)
                throw input_error("missing key 'sweep.values'");
            if (!vals->is_array())
                throw input_error("sweep.values: expected an array of numbers");
            for (std::size_t i = 0; i < vals->size(); ++i)
                sp.values.push_back(number_at((*vals)[i], "sweep.values[" + std::to_string(i) + "]"));

            if (const json *sch = find(j, "schemes"))
            {
                if (!sch->is_array())
                    throw input_error("sweep.schemes: expected an array of strings");
                sp.schemes.clear();
                for (std::size_t i = 0; i < sch->size(); ++i)
                {
                    const std::string at = "sweep.schemes[" + std::to_string(i) + "]";
                    if (!(*sch)[i].is_string())
                        throw input_error(at + ": expected a string");
                    const auto s = parse_benchmark_scheme((*sch)[i].get<std::string>());
                    if (!s)
                        throw input_error(at + ": unknown scheme '" + (*sch)[i].get<std::string>() + "'");
                    sp.schemes.push_back(*s);
                }
            }
            sp.validate();
            return sp;
        }

        std::string locate(std::string_view text, std::size_t byte)
        {
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
            return "line " + std::to_string(line) + ", column " + std::to_string(col) + " (byte offset " +
                   std::to_string(byte) + ")";
        }
    }

    scenario parse_scenario(std::string_view text)
    {
        json doc;
        try
        {
            doc = json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            throw input_error("malformed JSON at " + locate(text, e.byte) + ": " + e.what());
        }
        require_object(doc, "scenario");
        reject_unknown(doc, "", {"grid", "system", "users", "geometry", "copula", "sweep"});

        scenario s;
        const json *grid = find(doc, "grid");
        const json *system = find(doc, "system");
        const json *users = find(doc, "users");
        if (!grid)
            throw input_error("missing key 'grid'");
        if (!system)
            throw input_error("missing key 'system'");
        if (!users)
            throw input_error("missing key 'users'");
        parse_grid(*grid, s);
        parse_system(*system, s);
        if (!users->is_array() || users->empty())
            throw input_error("users: expected a nonempty array");
        for (std::size_t k = 0; k < users->size(); ++k)
            s.users.push_back(parse_user((*users)[k], "users[" + std::to_string(k) + "]"));
        if (const json *g = find(doc, "geometry"))
            s.geometry = parse_geometry(*g);
        if (const json *c = find(doc, "copula"))
            s.copula = parse_copula(*c);
        if (const json *sw = find(doc, "sweep"))
            s.sweep = parse_sweep(*sw);
        s.copula.seed = s.seed;
        s.validate();
        return s;
    }

    scenario load_scenario(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw input_error("cannot read scenario file '" + path.string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_scenario(buf.str());
    }
}
