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

#include "farelay/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace farelay::parallel
{
    namespace
    {
        std::atomic<unsigned> requested{0};
        thread_local bool inside_region = false;

        struct region_guard
        {
            bool previous;
            region_guard() : previous(inside_region) { inside_region = true; }
            ~region_guard() { inside_region = previous; }
        };
    }

    void set_threads(unsigned n) { requested.store(n); }

    unsigned threads()
    {
        unsigned n = requested.load();
        if (n == 0)
            n = std::max(1u, std::thread::hardware_concurrency());
        return n;
    }

    void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body)
    {
        if (count == 0)
            return;
        // Nested loops run inline on the calling worker.
        const std::size_t workers = inside_region ? 1 : std::min<std::size_t>(threads(), count);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                body(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(count);
        auto run = [&]()
        {
            region_guard guard;
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    errors[i] = std::current_exception();
                }
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (std::size_t t = 1; t < workers; ++t)
            pool.emplace_back(run);
        run();
        for (auto &th : pool)
            th.join();

        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}
