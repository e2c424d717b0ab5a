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

#include "farelay/channel.hpp"
#include "farelay/error.hpp"
#include "farelay/simd/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace farelay
{
    port_grid::port_grid(std::size_t n1, std::size_t n2, double w1, double w2)
        : n1_(n1), n2_(n2), w1_(w1), w2_(w2)
    {
        if (n1 < 1 || n2 < 1)
            throw domain_error("port_grid: n1 and n2 must be at least 1");
        if (!(w1 >= 0.0) || !(w2 >= 0.0) || !std::isfinite(w1) || !std::isfinite(w2))
            throw domain_error("port_grid: apertures w1, w2 must be finite and nonnegative");
    }

    std::size_t port_index(std::size_t n1_idx, std::size_t n2_idx, const port_grid &grid)
    {
        if (n1_idx < 1 || n1_idx > grid.n1() || n2_idx < 1 || n2_idx > grid.n2())
        {
            std::ostringstream msg;
            msg << "port_index: (" << n1_idx << ", " << n2_idx << ") outside the " << grid.n1() << " x "
                << grid.n2() << " grid";
            throw domain_error(msg.str());
        }
        return (n1_idx - 1) * grid.n2() + n2_idx;
    }

    port_position port_coordinates(std::size_t l, const port_grid &grid)
    {
        if (l < 1 || l > grid.ports())
            throw domain_error("port_coordinates: index " + std::to_string(l) + " outside 1.." +
                               std::to_string(grid.ports()));
        return {(l - 1) / grid.n2() + 1, (l - 1) % grid.n2() + 1};
    }

    double spherical_j0(double x)
    {
        const double ax = std::fabs(x);
        if (ax < 1e-4)
        {
            const double x2 = x * x;
            return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
        }
        return std::sin(x) / x;
    }

    double spatial_correlation(port_position a, port_position b, const port_grid &grid)
    {
        port_index(a.n1, a.n2, grid);
        port_index(b.n1, b.n2, grid);
        const auto gap = [](std::size_t i, std::size_t j)
        { return static_cast<double>(i > j ? i - j : j - i); };
        const double d1 = gap(a.n1, b.n1) * grid.spacing1();
        const double d2 = gap(a.n2, b.n2) * grid.spacing2();
        return spherical_j0(2.0 * std::numbers::pi * std::sqrt(d1 * d1 + d2 * d2));
    }

    namespace
    {
        bool try_factor(const Eigen::MatrixXd &m, Eigen::MatrixXd &factor)
        {
            Eigen::LLT<Eigen::MatrixXd> llt(m);
            if (llt.info() != Eigen::Success)
                return false;
            factor = llt.matrixL();
            if (!factor.allFinite())
                return false;
            const double recon = (factor * factor.transpose() - m).cwiseAbs().maxCoeff();
            return recon <= 1e-10;
        }
    }

    correlation_matrix correlation_matrix::from_entries(const Eigen::MatrixXd &entries)
    {
        const Eigen::Index n = entries.rows();
        if (n < 1 || entries.cols() != n)
            throw domain_error("correlation matrix must be square and non-empty");
        for (Eigen::Index i = 0; i < n; ++i)
        {
            if (std::fabs(entries(i, i) - 1.0) > 1e-12)
                throw domain_error("correlation matrix invariant violated: diagonal entry (" + std::to_string(i + 1) +
                                   "," + std::to_string(i + 1) + ") = " + std::to_string(entries(i, i)) +
                                   " is not 1");
            for (Eigen::Index j = 0; j < n; ++j)
            {
                const double v = entries(i, j);
                if (!std::isfinite(v) || std::fabs(v) > 1.0 + 1e-12)
                    throw domain_error("correlation matrix invariant violated: entry (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ") outside [-1, 1]");
                if (std::fabs(v - entries(j, i)) > 1e-12)
                    throw domain_error("correlation matrix invariant violated: not symmetric at (" +
                                       std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            }
        }

        Eigen::MatrixXd base = 0.5 * (entries + entries.transpose());
        base = base.cwiseMax(-1.0).cwiseMin(1.0);
        base.diagonal().setOnes();

        correlation_matrix out;
        Eigen::MatrixXd factor;
        if (try_factor(base, factor))
        {
            out.entries_ = std::move(base);
        }
        else
        {
            bool ok = false;
            for (double eps = 1e-12; eps <= 1e-6 * (1.0 + 1e-9); eps *= 10.0)
            {
                Eigen::MatrixXd reg = base;
                reg.diagonal().array() += eps;
                reg /= 1.0 + eps;
                reg.diagonal().setOnes();
                if (try_factor(reg, factor))
                {
                    out.entries_ = std::move(reg);
                    out.jitter_ = eps;
                    ok = true;
                    break;
                }
            }
            if (!ok)
            {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(base, Eigen::EigenvaluesOnly);
                std::ostringstream msg;
                msg << "correlation matrix (" << n << "x" << n
                    << ") is not positive definite even with 1e-6 diagonal jitter; smallest eigenvalue "
                    << eig.eigenvalues().minCoeff();
                throw numerical_error(msg.str());
            }
        }

        out.factor_ = std::move(factor);
        out.factor_rm_.resize(static_cast<std::size_t>(n * n));
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                out.factor_rm_[static_cast<std::size_t>(i * n + j)] = j <= i ? out.factor_(i, j) : 0.0;
        return out;
    }

    correlation_matrix build_correlation(const port_grid &grid)
    {
        const std::size_t n = grid.ports();
        Eigen::MatrixXd j(n, n);
        for (std::size_t a = 0; a < n; ++a)
        {
            const port_position pa = port_coordinates(a + 1, grid);
            j(a, a) = 1.0;
            for (std::size_t b = a + 1; b < n; ++b)
            {
                const double v = spatial_correlation(pa, port_coordinates(b + 1, grid), grid);
                j(a, b) = v;
                j(b, a) = v;
            }
        }
        return correlation_matrix::from_entries(j);
    }

    channel_realization sample_realization(const correlation_matrix &corr, random_stream &rng)
    {
        const std::size_t n = corr.dim();
        std::normal_distribution<double> normal;
        std::vector<double> g_re(n), g_im(n);
        constexpr double scale = 0.70710678118654752440;
        for (std::size_t j = 0; j < n; ++j)
        {
            g_re[j] = scale * normal(rng);
            g_im[j] = scale * normal(rng);
        }

        channel_realization out;
        out.port_gains.resize(n);
        const auto &l = corr.factor_row_major();
        double top = -1.0;
        for (std::size_t p = 0; p < n; ++p)
        {
            double re = 0.0, im = 0.0;
            for (std::size_t j = 0; j <= p; ++j)
            {
                re += l[p * n + j] * g_re[j];
                im += l[p * n + j] * g_im[j];
            }
            out.port_gains[p] = {re, im};
            const double power = re * re + im * im;
            if (power > top)
            {
                top = power;
                out.best_port = p;
            }
        }
        out.best_gain_sq = top;
        return out;
    }

    void sample_best_gains(const correlation_matrix &corr, random_stream &rng, std::span<double> best_gain,
                           std::span<std::uint32_t> best_port)
    {
        const std::size_t n = corr.dim();
        const std::size_t count = best_gain.size();
        if (!best_port.empty() && best_port.size() != count)
            throw domain_error("sample_best_gains: output spans differ in length");

        std::normal_distribution<double> normal;
        std::vector<double> g_re(n * count), g_im(n * count);
        constexpr double scale = 0.70710678118654752440;
        for (std::size_t t = 0; t < count; ++t)
            for (std::size_t j = 0; j < n; ++j)
            {
                g_re[j * count + t] = scale * normal(rng);
                g_im[j * count + t] = scale * normal(rng);
            }

        std::vector<std::uint32_t> ports_scratch;
        std::span<std::uint32_t> ports = best_port;
        if (ports.empty())
        {
            ports_scratch.resize(count);
            ports = ports_scratch;
        }
        simd::kernels().best_gain(n, corr.factor_row_major().data(), g_re.data(), g_im.data(), count,
                                  best_gain.data(), ports.data());
    }
}
