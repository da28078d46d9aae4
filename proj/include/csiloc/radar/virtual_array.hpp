// SPDX-License-Identifier: Apache-2.0
//
// csiloc: passive localization from OFDM channel state information
// Copyright (C) 2026 The csiloc Authors
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

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "csiloc/core/csi.hpp"

namespace csiloc
{
// MIMO phase centers of a ULA in which every element transmits and
// receives. A (tx, rx) pair behaves like one element at the midpoint of the
// two, so an M-element ULA spans 2M - 1 distinct phase centers.
struct VirtualArray
{
    std::vector<double> positions; // along the array axis, meters, relative to element 0
    double spacing = 0.0;          // between neighbouring phase centers
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs; // (tx, rx) per phase center
    std::size_t physical_elements = 0;
    Point2 origin;    // physical array center
    Point2 axis{1.0, 0.0};
    Point2 boresight{0.0, 1.0};

    std::size_t size() const { return positions.size(); }
};

inline VirtualArray virtual_array(const AntennaArray &array)
{
    const std::size_t m = array.size();
    if (m == 0)
        throw std::invalid_argument("virtual_array: empty array");

    VirtualArray va;
    va.physical_elements = m;
    va.origin = array.center();
    va.axis = array.axis();
    va.boresight = array.boresight();

    std::vector<double> u(m);
    for (std::size_t i = 0; i < m; ++i)
        u[i] = dot(array.elements[i] - array.elements[0], va.axis);

    if (m > 1)
    {
        const double d = u[1] - u[0];
        const double tol = 1e-9 * std::max(1.0, std::abs(d));
        if (!(d > 0.0))
            throw std::invalid_argument("virtual_array: elements are not ordered along the array axis");
        for (std::size_t i = 0; i < m; ++i)
        {
            const Point2 off = array.elements[i] - array.elements[0];
            const double across = std::abs(off.x * va.boresight.x + off.y * va.boresight.y);
            if (across > tol)
                throw std::invalid_argument("virtual_array: elements are not collinear");
            if (std::abs(u[i] - double(i) * d) > tol * double(i + 1))
                throw std::invalid_argument("virtual_array: element spacing is not uniform");
        }
        va.spacing = 0.5 * d;
    }

    // For a ULA, pairs with equal tx + rx index share a phase center.
    va.pairs.resize(2 * m - 1);
    va.positions.resize(2 * m - 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            va.pairs[i + j].push_back({i, j});
    for (std::size_t v = 0; v < va.pairs.size(); ++v)
    {
        const auto [i, j] = va.pairs[v].front();
        va.positions[v] = 0.5 * (u[i] + u[j]);
    }
    return va;
}

// Coherent average of all (tx, rx) entries that share a phase center.
// Returns V x N_C.
inline Eigen::MatrixXcd collapse_to_virtual(const CsiTensor &csi, const VirtualArray &va)
{
    const std::size_t m = va.physical_elements;
    if (csi.n_tx() != m || csi.n_rx() != m)
        throw std::invalid_argument("collapse_to_virtual: tensor shape does not match the array");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index(va.size()), Eigen::Index(csi.n_c()));
    for (std::size_t v = 0; v < va.size(); ++v)
    {
        const double w = 1.0 / double(va.pairs[v].size());
        for (const auto &[tx, rx] : va.pairs[v])
            for (std::size_t k = 0; k < csi.n_c(); ++k)
                out(Eigen::Index(v), Eigen::Index(k)) += w * csi(tx, rx, k);
    }
    return out;
}
} // namespace csiloc
