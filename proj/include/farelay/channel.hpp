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

#include "farelay/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace farelay
{
    // Planar fluid-antenna aperture: n1 x n2 ports spread uniformly over w1 x w2
    // wavelengths. All lengths are in wavelengths.
    class port_grid
    {
    public:
        port_grid(std::size_t n1, std::size_t n2, double w1, double w2);

        std::size_t n1() const { return n1_; }
        std::size_t n2() const { return n2_; }
        double w1() const { return w1_; }
        double w2() const { return w2_; }
        std::size_t ports() const { return n1_ * n2_; }

        // Port spacing along each dimension in wavelengths; 0 for a single-port dimension.
        double spacing1() const { return n1_ > 1 ? w1_ / static_cast<double>(n1_ - 1) : 0.0; }
        double spacing2() const { return n2_ > 1 ? w2_ / static_cast<double>(n2_ - 1) : 0.0; }

    private:
        std::size_t n1_, n2_;
        double w1_, w2_;
    };

    // 1-based grid coordinate of a port.
    struct port_position
    {
        std::size_t n1;
        std::size_t n2;
    };

    // Maps (n1, n2) to the 1-based linear port index l = (n1 - 1) * N2 + n2.
    std::size_t port_index(std::size_t n1_idx, std::size_t n2_idx, const port_grid &grid);

    // Inverse of port_index.
    port_position port_coordinates(std::size_t l, const port_grid &grid);

    // Spherical Bessel function of the first kind, order 0: sin(x)/x with j0(0) = 1.
    double spherical_j0(double x);

    double spatial_correlation(port_position a, port_position b, const port_grid &grid);

    // Symmetric port correlation J with unit diagonal, plus a lower-triangular
    // factor L with L L^T = J. If J is not numerically positive definite, a
    // diagonal jitter eps is added (1e-12 growing tenfold to 1e-6) and the
    // matrix is rescaled to unit diagonal; entries() then returns that
    // regularized matrix.
    class correlation_matrix
    {
    public:
        // Validates symmetry, unit diagonal and |J_kl| <= 1, then factorizes.
        static correlation_matrix from_entries(const Eigen::MatrixXd &entries);

        std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
        const Eigen::MatrixXd &entries() const { return entries_; }
        const Eigen::MatrixXd &factor() const { return factor_; }
        double jitter() const { return jitter_; }

        // Row-major copy of the factor (dim x dim) for the vector kernels.
        const std::vector<double> &factor_row_major() const { return factor_rm_; }

    private:
        correlation_matrix() = default;

        Eigen::MatrixXd entries_;
        Eigen::MatrixXd factor_;
        std::vector<double> factor_rm_;
        double jitter_ = 0.0;
    };

    correlation_matrix build_correlation(const port_grid &grid);

    struct channel_realization
    {
        std::vector<std::complex<double>> port_gains;
        std::size_t best_port = 0; // 0-based; smallest index on ties
        double best_gain_sq = 0.0;
    };

    // One draw h = L g, g ~ CN(0, I). Normals are consumed port by port, real part first.
    channel_realization sample_realization(const correlation_matrix &corr, random_stream &rng);

    // Bulk best-port gains |h^UR|^2 for best_gain.size() draws, using the same
    // draw order as sample_realization. best_port may be empty.
    void sample_best_gains(const correlation_matrix &corr, random_stream &rng, std::span<double> best_gain,
                           std::span<std::uint32_t> best_port = {});
}
