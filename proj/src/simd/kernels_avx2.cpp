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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "farelay/simd/kernels.hpp"
#include "normal_coeffs.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cstring>
#include <vector>

namespace farelay::simd
{
    namespace
    {
        using v4 = __m256d;

        inline v4 set1(double x) { return _mm256_set1_pd(x); }

        template <std::size_t n>
        inline v4 horner(const double (&c)[n], v4 x)
        {
            v4 s = set1(c[n - 1]);
            for (std::size_t i = n - 1; i-- > 0;)
                s = _mm256_fmadd_pd(s, x, set1(c[i]));
            return s;
        }

        // exp(x) for x <= 709. Range reduction by ln 2, degree-13 Taylor polynomial
        // on |r| <= ln2 / 2 (truncation error below 1e-17 relative).
        inline v4 vexp(v4 x)
        {
            constexpr double ln2_hi = 6.93147180369123816490e-01;
            constexpr double ln2_lo = 1.90821492927058770002e-10;
            constexpr double log2e = 1.44269504088896338700e+00;
            static constexpr double inv_fact[14] = {
                1.0, 1.0, 1.0 / 2, 1.0 / 6, 1.0 / 24, 1.0 / 120, 1.0 / 720, 1.0 / 5040, 1.0 / 40320,
                1.0 / 362880, 1.0 / 3628800, 1.0 / 39916800, 1.0 / 479001600, 1.0 / 6227020800.0};

            x = _mm256_max_pd(x, set1(-708.0));
            x = _mm256_min_pd(x, set1(709.0));
            const v4 n = _mm256_round_pd(_mm256_mul_pd(x, set1(log2e)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
            v4 r = _mm256_fnmadd_pd(n, set1(ln2_hi), x);
            r = _mm256_fnmadd_pd(n, set1(ln2_lo), r);
            const v4 p = horner(inv_fact, r);

            const __m128i n32 = _mm256_cvtpd_epi32(n);
            __m256i bits = _mm256_cvtepi32_epi64(n32);
            bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
            bits = _mm256_slli_epi64(bits, 52);
            return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
        }

        // Natural log for positive normal numbers: x = m 2^e with m in [sqrt(1/2), sqrt(2)),
        // log m = 2 atanh(s), s = (m - 1)/(m + 1), |s| <= 0.1716, series to s^21.
        inline v4 vlog(v4 x)
        {
            constexpr double ln2_hi = 6.93147180369123816490e-01;
            constexpr double ln2_lo = 1.90821492927058770002e-10;
            static constexpr double odd_recip[11] = {1.0, 1.0 / 3, 1.0 / 5, 1.0 / 7, 1.0 / 9, 1.0 / 11,
                                                     1.0 / 13, 1.0 / 15, 1.0 / 17, 1.0 / 19, 1.0 / 21};

            const __m256i bits = _mm256_castpd_si256(x);
            const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
            const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
            v4 m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

            // biased exponent k as a double: (2^52 + k) - 2^52
            const __m256i k = _mm256_srli_epi64(bits, 52);
            const v4 two52 = set1(0x1.0p52);
            v4 e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(k, _mm256_castpd_si256(two52))), two52);
            e = _mm256_sub_pd(e, set1(1023.0));

            const v4 big = _mm256_cmp_pd(m, set1(1.41421356237309504880), _CMP_GT_OQ);
            m = _mm256_blendv_pd(m, _mm256_mul_pd(m, set1(0.5)), big);
            e = _mm256_blendv_pd(e, _mm256_add_pd(e, set1(1.0)), big);

            const v4 s = _mm256_div_pd(_mm256_sub_pd(m, set1(1.0)), _mm256_add_pd(m, set1(1.0)));
            const v4 s2 = _mm256_mul_pd(s, s);
            const v4 series = horner(odd_recip, s2);
            const v4 logm = _mm256_mul_pd(_mm256_add_pd(s, s), series);
            return _mm256_fmadd_pd(e, set1(ln2_hi), _mm256_fmadd_pd(e, set1(ln2_lo), logm));
        }

        // erfc for y >= 0 (Cody). Branches are evaluated for all lanes and blended.
        inline v4 verfc_pos(v4 y)
        {
            using namespace coeffs;
            const v4 one = set1(1.0);

            // |y| <= 0.46875: 1 - erf(y)
            const v4 ysq = _mm256_mul_pd(y, y);
            v4 xnum = _mm256_mul_pd(set1(erf_a[4]), ysq);
            v4 xden = ysq;
            for (int i = 0; i < 3; ++i)
            {
                xnum = _mm256_mul_pd(_mm256_add_pd(xnum, set1(erf_a[i])), ysq);
                xden = _mm256_mul_pd(_mm256_add_pd(xden, set1(erf_b[i])), ysq);
            }
            const v4 erf_small = _mm256_div_pd(_mm256_mul_pd(y, _mm256_add_pd(xnum, set1(erf_a[3]))),
                                               _mm256_add_pd(xden, set1(erf_b[3])));
            const v4 r_small = _mm256_sub_pd(one, erf_small);

            // Shared exp(-y^2) computed in two pieces for accuracy.
            const v4 yt = _mm256_div_pd(_mm256_round_pd(_mm256_mul_pd(y, set1(16.0)), _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC),
                                        set1(16.0));
            const v4 del = _mm256_mul_pd(_mm256_sub_pd(y, yt), _mm256_add_pd(y, yt));
            const v4 gauss = _mm256_mul_pd(vexp(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(yt, yt))),
                                           vexp(_mm256_sub_pd(_mm256_setzero_pd(), del)));

            // 0.46875 < y <= 4
            xnum = _mm256_mul_pd(set1(erfc_c[8]), y);
            xden = y;
            for (int i = 0; i < 7; ++i)
            {
                xnum = _mm256_mul_pd(_mm256_add_pd(xnum, set1(erfc_c[i])), y);
                xden = _mm256_mul_pd(_mm256_add_pd(xden, set1(erfc_d[i])), y);
            }
            const v4 r_mid = _mm256_mul_pd(gauss, _mm256_div_pd(_mm256_add_pd(xnum, set1(erfc_c[7])),
                                                                _mm256_add_pd(xden, set1(erfc_d[7]))));

            // y > 4
            const v4 yinv2 = _mm256_div_pd(one, ysq);
            xnum = _mm256_mul_pd(set1(erfc_p[5]), yinv2);
            xden = yinv2;
            for (int i = 0; i < 4; ++i)
            {
                xnum = _mm256_mul_pd(_mm256_add_pd(xnum, set1(erfc_p[i])), yinv2);
                xden = _mm256_mul_pd(_mm256_add_pd(xden, set1(erfc_q[i])), yinv2);
            }
            v4 tail = _mm256_div_pd(_mm256_mul_pd(yinv2, _mm256_add_pd(xnum, set1(erfc_p[4]))),
                                    _mm256_add_pd(xden, set1(erfc_q[4])));
            tail = _mm256_div_pd(_mm256_sub_pd(set1(inv_sqrt_pi), tail), y);
            v4 r_large = _mm256_mul_pd(gauss, tail);
            r_large = _mm256_and_pd(r_large, _mm256_cmp_pd(y, set1(26.543), _CMP_LT_OQ));

            v4 r = _mm256_blendv_pd(r_mid, r_large, _mm256_cmp_pd(y, set1(4.0), _CMP_GT_OQ));
            return _mm256_blendv_pd(r, r_small, _mm256_cmp_pd(y, set1(erf_thresh), _CMP_LE_OQ));
        }

        inline v4 vnormal_cdf(v4 x)
        {
            const v4 z = _mm256_mul_pd(x, set1(-0.70710678118654752440));
            const v4 sign_mask = set1(-0.0);
            const v4 y = _mm256_andnot_pd(sign_mask, z);
            const v4 c = verfc_pos(y);
            const v4 neg = _mm256_cmp_pd(z, _mm256_setzero_pd(), _CMP_LT_OQ);
            const v4 full = _mm256_blendv_pd(c, _mm256_sub_pd(set1(2.0), c), neg);
            return _mm256_mul_pd(set1(0.5), full);
        }

        // Quantile for u already clamped into (0, 1).
        inline v4 vnormal_quantile(v4 u)
        {
            using namespace coeffs;
            const v4 half = set1(0.5);
            const v4 q = _mm256_sub_pd(u, half);

            const v4 r_c = _mm256_fnmadd_pd(q, q, set1(0.180625));
            const v4 central = _mm256_div_pd(_mm256_mul_pd(q, horner(q_central_num, r_c)), horner(q_central_den, r_c));

            const v4 t = _mm256_min_pd(u, _mm256_sub_pd(set1(1.0), u));
            const v4 r = _mm256_sqrt_pd(_mm256_sub_pd(_mm256_setzero_pd(), vlog(t)));
            const v4 r_m = _mm256_sub_pd(r, set1(1.6));
            const v4 r_t = _mm256_sub_pd(r, set1(5.0));
            const v4 mid = _mm256_div_pd(horner(q_mid_num, r_m), horner(q_mid_den, r_m));
            const v4 far = _mm256_div_pd(horner(q_tail_num, r_t), horner(q_tail_den, r_t));
            v4 tail = _mm256_blendv_pd(mid, far, _mm256_cmp_pd(r, set1(q_split_tail), _CMP_GT_OQ));
            const v4 sign = _mm256_and_pd(q, set1(-0.0));
            tail = _mm256_xor_pd(tail, sign);

            const v4 absq = _mm256_andnot_pd(set1(-0.0), q);
            return _mm256_blendv_pd(tail, central, _mm256_cmp_pd(absq, set1(q_split_central), _CMP_LE_OQ));
        }

        inline v4 clamp_u(v4 u)
        {
            return _mm256_min_pd(_mm256_max_pd(u, set1(coeffs::u_floor)), set1(coeffs::u_ceil));
        }

        // Integrand at four points. w points to dim - 1 lane vectors.
        inline v4 genz_point4(const genz_plan &plan, const v4 *w, v4 *y, const v4 *inv_diag)
        {
            const std::size_t n = plan.dim;
            v4 f = set1(plan.first_factor);
            y[0] = vnormal_quantile(clamp_u(_mm256_mul_pd(w[0], f)));
            for (std::size_t i = 1; i < n; ++i)
            {
                const double *row = plan.chol + i * n;
                v4 s = _mm256_setzero_pd();
                for (std::size_t j = 0; j < i; ++j)
                    s = _mm256_fmadd_pd(set1(row[j]), y[j], s);
                const v4 e = vnormal_cdf(_mm256_mul_pd(_mm256_sub_pd(set1(plan.limits[i]), s), inv_diag[i]));
                f = _mm256_mul_pd(f, e);
                if (i + 1 < n)
                    y[i] = vnormal_quantile(clamp_u(_mm256_mul_pd(w[i], e)));
            }
            return f;
        }

        inline double hsum(v4 v)
        {
            alignas(32) double tmp[4];
            _mm256_store_pd(tmp, v);
            return (tmp[0] + tmp[1]) + (tmp[2] + tmp[3]);
        }

        double genz_sum(const genz_plan &plan, const lattice_block &block)
        {
            const std::size_t m = plan.dim - 1;
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wignored-attributes"
            std::vector<v4> w(m), wa(m), y(plan.dim), inv_diag(plan.dim);
#pragma GCC diagnostic pop
            for (std::size_t i = 0; i < plan.dim; ++i)
                inv_diag[i] = set1(1.0 / plan.chol[i * plan.dim + i]);

            v4 acc = _mm256_setzero_pd();
            const v4 lane_offset = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
            for (std::size_t k = 0; k < block.count; k += 4)
            {
                const v4 index = _mm256_add_pd(set1(static_cast<double>(block.first + k)), lane_offset);
                for (std::size_t j = 0; j < m; ++j)
                {
                    const v4 x = _mm256_add_pd(_mm256_mul_pd(index, set1(block.generator[j])), set1(block.shift[j]));
                    const v4 frac = _mm256_sub_pd(x, _mm256_floor_pd(x));
                    const v4 tent = _mm256_sub_pd(_mm256_add_pd(frac, frac), set1(1.0));
                    w[j] = _mm256_andnot_pd(set1(-0.0), tent);
                    wa[j] = _mm256_sub_pd(set1(1.0), w[j]);
                }
                const v4 a = genz_point4(plan, w.data(), y.data(), inv_diag.data());
                const v4 b = genz_point4(plan, wa.data(), y.data(), inv_diag.data());
                v4 v = _mm256_mul_pd(set1(0.5), _mm256_add_pd(a, b));
                const std::size_t left = block.count - k;
                if (left < 4)
                {
                    const v4 live = _mm256_cmp_pd(lane_offset, set1(static_cast<double>(left)), _CMP_LT_OQ);
                    v = _mm256_and_pd(v, live);
                }
                acc = _mm256_add_pd(acc, v);
            }
            return hsum(acc);
        }

        // Four draws starting at column t of the port-major arrays (stride = count).
        inline void best_gain4(std::size_t ports, const double *factor, const double *g_re, const double *g_im,
                               std::size_t stride, double *best, std::uint32_t *best_port)
        {
            v4 top = set1(-1.0);
            v4 arg = _mm256_setzero_pd();
            for (std::size_t l = 0; l < ports; ++l)
            {
                const double *row = factor + l * ports;
                v4 re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
                for (std::size_t j = 0; j <= l; ++j)
                {
                    const v4 c = set1(row[j]);
                    re = _mm256_fmadd_pd(c, _mm256_loadu_pd(g_re + j * stride), re);
                    im = _mm256_fmadd_pd(c, _mm256_loadu_pd(g_im + j * stride), im);
                }
                const v4 p = _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im));
                const v4 gt = _mm256_cmp_pd(p, top, _CMP_GT_OQ);
                top = _mm256_blendv_pd(top, p, gt);
                arg = _mm256_blendv_pd(arg, set1(static_cast<double>(l)), gt);
            }
            alignas(32) double a[4];
            _mm256_storeu_pd(best, top);
            _mm256_store_pd(a, arg);
            for (int i = 0; i < 4; ++i)
                best_port[i] = static_cast<std::uint32_t>(a[i]);
        }

        void best_gain(std::size_t ports, const double *factor, const double *g_re, const double *g_im,
                       std::size_t count, double *best, std::uint32_t *best_port)
        {
            std::size_t t = 0;
            for (; t + 4 <= count; t += 4)
                best_gain4(ports, factor, g_re + t, g_im + t, count, best + t, best_port + t);
            if (t == count)
                return;

            // Remainder goes through the same 4-wide arithmetic on a zero-padded copy.
            const std::size_t left = count - t;
            std::vector<double> re(ports * 4, 0.0), im(ports * 4, 0.0);
            for (std::size_t j = 0; j < ports; ++j)
                for (std::size_t i = 0; i < left; ++i)
                {
                    re[j * 4 + i] = g_re[j * count + t + i];
                    im[j * 4 + i] = g_im[j * count + t + i];
                }
            double b[4];
            std::uint32_t a[4];
            best_gain4(ports, factor, re.data(), im.data(), 4, b, a);
            std::copy_n(b, left, best + t);
            std::copy_n(a, left, best_port + t);
        }

        void normal_cdf(const double *in, double *out, std::size_t n)
        {
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
                _mm256_storeu_pd(out + i, vnormal_cdf(_mm256_loadu_pd(in + i)));
            if (i < n)
            {
                double buf[4] = {0.0, 0.0, 0.0, 0.0};
                std::copy(in + i, in + n, buf);
                _mm256_storeu_pd(buf, vnormal_cdf(_mm256_loadu_pd(buf)));
                std::copy_n(buf, n - i, out + i);
            }
        }

        void normal_quantile(const double *in, double *out, std::size_t n)
        {
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4)
                _mm256_storeu_pd(out + i, vnormal_quantile(clamp_u(_mm256_loadu_pd(in + i))));
            if (i < n)
            {
                double buf[4] = {0.5, 0.5, 0.5, 0.5};
                std::copy(in + i, in + n, buf);
                _mm256_storeu_pd(buf, vnormal_quantile(clamp_u(_mm256_loadu_pd(buf))));
                std::copy_n(buf, n - i, out + i);
            }
        }
    }

    namespace detail
    {
        const kernel_table avx2_table{isa::avx2, &genz_sum, &best_gain, &normal_cdf, &normal_quantile};
    }
}
