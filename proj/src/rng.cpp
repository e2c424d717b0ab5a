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

#include "farelay/rng.hpp"

namespace farelay
{
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t substream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
    {
        std::uint64_t h = splitmix64(seed);
        h = splitmix64(h ^ a);
        h = splitmix64(h ^ (b + 0x632BE59BD9B4E019ULL));
        h = splitmix64(h ^ (c + 0x8CB92BA72F3D8DD7ULL));
        return h;
    }

    random_stream make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
    {
        return random_stream(substream_key(seed, a, b, c));
    }
}
