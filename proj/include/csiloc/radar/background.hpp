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

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "csiloc/core/csi.hpp"

namespace csiloc
{
namespace detail
{
inline double median_inplace(std::vector<double> &v)
{
    const std::size_t n = v.size();
    const std::size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + std::ptrdiff_t(mid), v.end());
    const double hi = v[mid];
    if (n % 2 == 1)
        return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + std::ptrdiff_t(mid));
    return 0.5 * (lo + hi);
}
} // namespace detail

// Static-scene estimate: per cell, the median of the real parts and the
// median of the imaginary parts over the last K snapshots.
inline CsiTensor estimate_background_median(std::span<const CsiSnapshot> snapshots, std::size_t k)
{
    if (k == 0)
        throw std::invalid_argument("estimate_background_median: K must be positive");
    if (snapshots.size() < k)
        throw std::invalid_argument("estimate_background_median: fewer than K snapshots available");
    const auto window = snapshots.subspan(snapshots.size() - k);
    const CsiTensor &ref = window.front().csi;
    for (const auto &s : window)
        if (!s.csi.same_shape(ref))
            throw std::invalid_argument("estimate_background_median: snapshot shapes differ");

    CsiTensor bg(ref.n_tx(), ref.n_rx(), ref.n_c());
    std::vector<double> re(k), im(k);
    for (std::size_t c = 0; c < ref.size(); ++c)
    {
        for (std::size_t t = 0; t < k; ++t)
        {
            re[t] = window[t].csi.data()[c].real();
            im[t] = window[t].csi.data()[c].imag();
        }
        bg.data()[c] = cd(detail::median_inplace(re), detail::median_inplace(im));
    }
    return bg;
}
} // namespace csiloc
