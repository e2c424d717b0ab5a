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

// Coefficient tables shared by the scalar and vector normal-distribution kernels.

namespace farelay::simd::coeffs
{
    // Wichura's AS241 (PPND16) rational approximations for the normal quantile.
    // Ascending powers; the denominators carry an implicit leading 1.
    inline constexpr double q_central_num[8] = {
        3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3, 1.3731693765509461125e+4,
        4.5921953931549871457e+4, 6.7265770927008700853e+4, 3.3430575583588128105e+4, 2.5090809287301226727e+3};
    inline constexpr double q_central_den[8] = {
        1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2, 5.3941960214247511077e+3,
        2.1213794301586595867e+4, 3.9307895800092710610e+4, 2.8729085735721942674e+4, 5.2264952788528545610e+3};
    inline constexpr double q_mid_num[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0, 3.64784832476320460504e0,
        1.27045825245236838258e0, 2.41780725177450611770e-1, 2.27238449892691845833e-2, 7.74545014278341407640e-4};
    inline constexpr double q_mid_den[8] = {
        1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4, 1.05075007164441684324e-9};
    inline constexpr double q_tail_num[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0, 2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3, 2.71155556874348757815e-5, 2.01033439929228813265e-7};
    inline constexpr double q_tail_den[8] = {
        1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7, 2.04426310338993978564e-15};

    inline constexpr double q_split_central = 0.425;
    inline constexpr double q_split_tail = 5.0;

    // Cody's rational Chebyshev approximations for erf/erfc.
    inline constexpr double erf_a[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                        3209.37758913846947, .185777706184603153};
    inline constexpr double erf_b[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                        2844.23683343917062};
    inline constexpr double erfc_c[9] = {.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                         298.635138197400131, 881.95222124176909, 1712.04761263407058,
                                         2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
    inline constexpr double erfc_d[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                         1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                         3439.36767414372164, 1230.33935480374942};
    inline constexpr double erfc_p[6] = {.305326634961232344, .360344899949804439, .125781726111229246,
                                         .0160837851487422766, 6.58749161529837803e-4, .0163153871373020978};
    inline constexpr double erfc_q[5] = {2.56852019228982242, 1.87295284992346047, .527905102951428412,
                                         .0605183413124413191, .00233520497626869185};
    inline constexpr double erf_thresh = 0.46875;
    inline constexpr double inv_sqrt_pi = 0.56418958354775628695;

    // Quantile inputs are clamped to this range inside the integration kernels.
    inline constexpr double u_floor = 1e-300;
    inline constexpr double u_ceil = 1.0 - 0x1.0p-53;
}
