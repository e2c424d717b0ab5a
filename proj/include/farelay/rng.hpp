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
#include <random>

namespace farelay
{
    // Random stream used everywhere in the library. A stream is identified by
    // (seed, a, b, c); identical identifiers give identical streams, so work can
    // be split across threads without changing any output.
    using random_stream = std::mt19937_64;

    std::uint64_t splitmix64(std::uint64_t x);

    std::uint64_t substream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

    random_stream make_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0, std::uint64_t c = 0);

    // Uniform double in [0, 1) with 53 random bits.
    inline double uniform01(random_stream &rng)
    {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
}
