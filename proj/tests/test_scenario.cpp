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

#include "farelay/error.hpp"
#include "farelay/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace farelay;

namespace
{
    const char *minimal = R"({
  "grid": {"n1": 2, "n2": 3, "w1": 0.5, "w2": 1.0},
  "system": {"total_bw_hz": 1e6, "xi_bits": 0.2, "seed": 9, "trials": 4},
  "users": [{"alpha_ur": 1e-13, "alpha_ub": 1e-15, "alpha_rb": 1e-13,
             "sigma2_relay_dbm": -120, "sigma2_bs_dbm": -90,
             "p_user_max_w": 0.1, "p_relay_max_w": 0.2, "rate_min_bps": 1e4}]
})";

    std::string replace(std::string text, const std::string &from, const std::string &to)
    {
        const auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        return text.replace(pos, from.size(), to);
    }

    std::string message_of(const std::string &text)
    {
        try
        {
            parse_scenario(text);
        }
        catch (const input_error &e)
        {
            return e.what();
        }
        return {};
    }

    bool contains(const std::string &s, const std::string &part) { return s.find(part) != std::string::npos; }
}

TEST_CASE("dBm conversion")
{
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(dbm_to_watts(-120.0) == doctest::Approx(1e-15).epsilon(1e-14));
}

TEST_CASE("minimal scenario parses with defaults")
{
    const auto s = parse_scenario(minimal);
    CHECK(s.grid.n1() == 2);
    CHECK(s.grid.n2() == 3);
    CHECK(s.total_bw == 1e6);
    CHECK(s.xi == 0.2);
    CHECK(s.seed == 9);
    CHECK(s.trials == 4);
    REQUIRE(s.users.size() == 1);
    CHECK(s.users[0].budget.sigma2_relay == doctest::Approx(1e-15).epsilon(1e-12));
    CHECK(s.users[0].budget.sigma2_bs == doctest::Approx(1e-12).epsilon(1e-12));
    CHECK_FALSE(s.users[0].p_user_min.has_value());
    CHECK_FALSE(s.geometry.has_value());
    CHECK_FALSE(s.sweep.has_value());
    CHECK(s.threshold() == doctest::Approx(std::exp2(0.4) - 1.0));
}

TEST_CASE("unknown keys name their path")
{
    const auto m = message_of(replace(minimal, "\"w2\": 1.0", "\"w2\": 1.0, \"w3\": 2"));
    CHECK(contains(m, "grid.w3"));
    const auto u = message_of(replace(minimal, "\"rate_min_bps\": 1e4", "\"rate_min_bps\": 1e4, \"gain\": 1"));
    CHECK(contains(u, "users[0].gain"));
    CHECK(contains(message_of(replace(minimal, "\"grid\"", "\"extra\": 1, \"grid\"")), "extra"));
}

TEST_CASE("missing and mistyped fields are reported")
{
    CHECK(contains(message_of(replace(minimal, "\"seed\": 9, ", "")), "system.seed"));
    CHECK(contains(message_of(replace(minimal, "\"trials\": 4", "\"trials\": \"4\"")), "system.trials"));
    CHECK(contains(message_of(replace(minimal, "\"p_user_max_w\": 0.1", "\"p_user_max_w\": -0.1")),
                   "users[0].p_user_max_w"));
    CHECK(contains(message_of(replace(minimal, "\"n1\": 2", "\"n1\": 0")), "grid.n1"));
    CHECK(contains(message_of(R"({"grid": {"n1": 1, "n2": 1, "w1": 0, "w2": 0}})"), "system"));
}

TEST_CASE("malformed JSON names the byte offset")
{
    const std::string bad = replace(minimal, "\"seed\": 9,", "\"seed\": 9,,");
    const auto m = message_of(bad);
    CHECK(contains(m, "byte offset"));
    CHECK(contains(m, "line 3"));
}

TEST_CASE("explicit correlation matrices are validated")
{
    const std::string grid = R"("grid": {"n1": 2, "n2": 1, "w1": 1, "w2": 0, "correlation": [[1, 0.3], [0.3, 1]]})";
    std::string text = replace(minimal, R"("grid": {"n1": 2, "n2": 3, "w1": 0.5, "w2": 1.0})", grid);
    const auto s = parse_scenario(text);
    REQUIRE(s.correlation.has_value());
    CHECK((*s.correlation)(0, 1) == 0.3);

    CHECK_THROWS_AS(parse_scenario(replace(text, "[[1, 0.3]", "[[0.9, 0.3]")), input_error);
    CHECK_THROWS_AS(parse_scenario(replace(text, "[0.3, 1]]", "[0.4, 1]]")), input_error);
    CHECK_THROWS_AS(parse_scenario(replace(text, "0.3], [0.3", "1.5], [1.5")), input_error);
    CHECK_THROWS_AS(parse_scenario(replace(text, "[0.3, 1]]", "[0.3]]")), input_error);
}

TEST_CASE("sweep section")
{
    const std::string base = replace(minimal, "\n}", R"(, "sweep": {"variable": "num_ports", "values": [1, 2, 3]}})");
    const auto s = parse_scenario(base);
    REQUIRE(s.sweep.has_value());
    CHECK(s.sweep->variable == sweep_variable::num_ports);
    CHECK(s.sweep->schemes.size() == 4);

    CHECK(contains(message_of(replace(base, "num_ports", "bandwidth")), "unknown sweep variable"));
    CHECK(contains(message_of(replace(base, "[1, 2, 3]", "[3, 2]")), "sweep"));
    CHECK(contains(message_of(replace(base, "\"values\"", "\"vals\"")), "sweep.vals"));
    const auto sch = parse_scenario(replace(base, "[1, 2, 3]}", R"([1, 2], "schemes": ["tas"]})"));
    REQUIRE(sch.sweep->schemes.size() == 1);
    CHECK(sch.sweep->schemes[0] == benchmark_scheme::tas);
    CHECK(contains(message_of(replace(base, "[1, 2, 3]}", R"([1], "schemes": ["best"]})")), "sweep.schemes[0]"));
}

TEST_CASE("optional sections")
{
    std::string text = replace(minimal, "\n}", R"(, "geometry": {"alpha_ub_db": [-150, -140]},
        "copula": {"target_abs_error": 1e-3}})");
    text = replace(text, "\"trials\": 4", "\"trials\": 4, \"num_users\": 3");
    const auto s = parse_scenario(text);
    REQUIRE(s.geometry.has_value());
    CHECK(s.geometry->alpha_ub_db[0] == -150.0);
    CHECK(s.geometry->alpha_ur_db[0] == geometry_ranges{}.alpha_ur_db[0]);
    CHECK(s.copula.target_abs_error == 1e-3);
    CHECK(s.user_count() == 3);
    CHECK_THROWS_AS(parse_scenario(replace(text, "[-150, -140]", "[-140, -150]")), input_error);

    const auto mins = parse_scenario(
        replace(minimal, "\"rate_min_bps\": 1e4", "\"rate_min_bps\": 1e4, \"p_user_min_w\": 0.01"));
    REQUIRE(mins.users[0].p_user_min.has_value());
    CHECK(*mins.users[0].p_user_min == 0.01);
}

TEST_CASE("shipped scenarios load")
{
    for (const char *name : {"default.json", "single_user.json", "sweep_users.json", "sweep_ports.json",
                             "sweep_relay_power.json"})
    {
        INFO(name);
        CHECK_NOTHROW(load_scenario(std::filesystem::path(FARELAY_SCENARIO_DIR) / name));
    }
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), input_error);
}
