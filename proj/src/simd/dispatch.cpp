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

#include "farelay/simd/kernels.hpp"
#include "farelay/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace farelay::simd
{
    namespace
    {
        bool cpu_has_avx2()
        {
#if defined(FARELAY_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        }

        isa initial_isa()
        {
            if (const char *env = std::getenv("FARELAY_SIMD"); env && *env)
            {
                const std::string_view name(env);
                if (name == "scalar")
                    return isa::scalar;
                if (name == "avx2" && supported(isa::avx2))
                    return isa::avx2;
            }
            return supported(isa::avx2) ? isa::avx2 : isa::scalar;
        }

        std::atomic<isa> &current()
        {
            static std::atomic<isa> value{initial_isa()};
            return value;
        }
    }

    const char *to_string(isa id)
    {
        switch (id)
        {
        case isa::scalar:
            return "scalar";
        case isa::avx2:
            return "avx2";
        }
        return "unknown";
    }

    isa parse_isa(std::string_view name)
    {
        if (name == "scalar")
            return isa::scalar;
        if (name == "avx2")
            return isa::avx2;
        throw domain_error("unknown SIMD variant '" + std::string(name) + "'");
    }

    bool supported(isa id)
    {
        if (id == isa::scalar)
            return true;
        static const bool avx2 = cpu_has_avx2();
        return id == isa::avx2 && avx2;
    }

    isa active_isa() { return current().load(); }

    void set_active_isa(isa id)
    {
        if (!supported(id))
            throw domain_error(std::string("SIMD variant not supported on this CPU: ") + to_string(id));
        current().store(id);
    }

    const kernel_table &kernels(isa id)
    {
        if (!supported(id))
            throw domain_error(std::string("SIMD variant not supported on this CPU: ") + to_string(id));
#ifdef FARELAY_HAVE_AVX2
        if (id == isa::avx2)
            return detail::avx2_table;
#endif
        return detail::scalar_table;
    }

    const kernel_table &kernels() { return kernels(active_isa()); }
}
