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

#include "farelay/harness.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <utility>

namespace farelay::cli
{
    enum exit_code : int
    {
        ok = 0,
        unexpected = 1,
        input = 2,
        numerical = 3,
        validation_failed = 4,
        infeasible = 5
    };

    struct op_surface_options
    {
        std::optional<std::pair<double, double>> pu_range; // W, default [0.01, 1] * p_user_max
        std::optional<std::pair<double, double>> pr_range; // W, default [0.01, 1] * p_relay_max
        std::size_t steps = 10;
        std::optional<double> xi; // default: scenario xi
        std::size_t user = 0;
    };

    struct validate_options
    {
        std::uint64_t trials = 1000000;
        std::size_t points = 20;
        std::size_t user = 0;
    };

    struct optimize_options
    {
        std::uint64_t trial = 0;
    };

    struct sweep_options
    {
        std::optional<std::filesystem::path> summary;
    };

    // Each command writes CSV to `out`, diagnostics to `err`, and returns an exit code.
    // Library exceptions propagate; run() maps them to exit codes.
    int op_surface(const scenario &scen, const op_surface_options &opt, std::ostream &out, std::ostream &err);
    int validate(const scenario &scen, const validate_options &opt, std::ostream &out, std::ostream &err);
    int optimize(const scenario &scen, const optimize_options &opt, std::ostream &out, std::ostream &err);
    int sweep(const scenario &scen, const sweep_options &opt, std::ostream &out, std::ostream &err);

    // Full command line: parses flags, loads the scenario, dispatches and maps errors.
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}
