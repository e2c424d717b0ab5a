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

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace farelay::csv
{
    // 9 significant digits, general notation, locale independent.
    std::string format(double v);

    // Quotes a field when it contains a comma, quote or line break.
    std::string escape(std::string_view field);

    class writer
    {
    public:
        explicit writer(std::ostream &out) : out_(out) {}

        writer &field(std::string_view s);
        writer &field(const char *s) { return field(std::string_view(s)); }
        writer &field(double v);
        writer &field(std::uint64_t v);
        writer &field(bool v);
        void end_row();

        void header(const std::vector<std::string_view> &names);

    private:
        std::ostream &out_;
        bool first_ = true;
    };
}
