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

#include <stdexcept>
#include <string>

namespace farelay
{
    // Precondition violated by the caller (bad index, negative x, size mismatch, ...).
    class domain_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A numerical routine could not produce a trustworthy answer.
    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed or inconsistent user input (scenario files, CLI flags).
    class input_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class infeasibility
    {
        power,     // INFEASIBLE_POWER: min-power guard cannot be met inside the power box
        bandwidth, // INFEASIBLE_BANDWIDTH: residual bandwidth of the lead user below its own need
        rate       // Gamma = 0 with a positive rate requirement
    };

    inline const char *to_string(infeasibility kind)
    {
        switch (kind)
        {
        case infeasibility::power:
            return "INFEASIBLE_POWER";
        case infeasibility::bandwidth:
            return "INFEASIBLE_BANDWIDTH";
        case infeasibility::rate:
            return "INFEASIBLE_RATE";
        }
        return "INFEASIBLE";
    }

    class infeasible_error : public std::runtime_error
    {
    public:
        infeasible_error(infeasibility kind, const std::string &what)
            : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

        infeasibility kind() const noexcept { return kind_; }

    private:
        infeasibility kind_;
    };
}
