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

#include <cstddef>
#include <functional>

namespace farelay::parallel
{
    // Number of worker threads used by parallel_for. 0 restores the default
    // (std::thread::hardware_concurrency()).
    void set_threads(unsigned n);
    unsigned threads();

    // Calls body(i) for every i in [0, count). Work items are independent and
    // results must be written to slots indexed by i; the schedule never
    // influences values. Exceptions from any item are rethrown (lowest index first).
    void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);
}
