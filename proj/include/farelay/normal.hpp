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

namespace farelay
{
    // Standard normal CDF.
    double std_normal_cdf(double x);

    // Standard normal quantile (inverse CDF). Throws domain_error unless 0 < u < 1.
    double std_normal_quantile(double u);

    // Quantile without argument checks; u must lie in (0, 1).
    double std_normal_quantile_unchecked(double u);
}
