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

#include "farelay/csv.hpp"

#include <charconv>
#include <cmath>

namespace farelay::csv
{
    std::string format(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        if (v == 0.0)
            v = 0.0; // drop the sign of -0
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
        return std::string(buf, res.ptr);
    }

    std::string escape(std::string_view field)
    {
        if (field.find_first_of(",\"\r\n") == std::string_view::npos)
            return std::string(field);
        std::string out = "\"";
        for (char c : field)
        {
            if (c == '"')
                out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    writer &writer::field(std::string_view s)
    {
        if (!first_)
            out_ << ',';
        out_ << escape(s);
        first_ = false;
        return *this;
    }

    writer &writer::field(double v) { return field(std::string_view(format(v))); }

    writer &writer::field(std::uint64_t v) { return field(std::string_view(std::to_string(v))); }

    writer &writer::field(bool v) { return field(std::string_view(v ? "1" : "0")); }

    void writer::end_row()
    {
        out_ << '\n';
        first_ = true;
    }

    void writer::header(const std::vector<std::string_view> &names)
    {
        for (auto n : names)
            field(n);
        end_row();
    }
}
