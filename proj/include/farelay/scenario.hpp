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

#include <filesystem>
#include <string_view>

namespace farelay
{
    // 10^((dBm - 30) / 10) watts.
    double dbm_to_watts(double dbm);

    // Parses a JSON scenario document. Unknown keys, wrong types, missing required
    // fields and out-of-range values raise input_error naming the offending path;
    // syntax errors name the line, column and byte offset.
    scenario parse_scenario(std::string_view text);

    scenario load_scenario(const std::filesystem::path &path);
}
