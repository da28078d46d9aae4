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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "csiloc/core/csi.hpp"
#include "csiloc/radar/background.hpp"
#include "csiloc/radar/detector.hpp"
#include "csiloc/radar/range_azimuth.hpp"
#include "csiloc/radar/virtual_array.hpp"

namespace csiloc
{
struct RadarParams
{
    std::size_t k_background = 31;
    std::size_t zero_pad = 8;
    DetectorParams detector;
};

// Snapshot range [first, last) that forms the background of frame t: the K
// frames ending at t, or the first K frames while fewer than K precede t.
inline std::pair<std::size_t, std::size_t> sliding_window(std::size_t t, std::size_t n, std::size_t k)
{
    if (n <= k)
        return {0, n};
    if (t + 1 >= k)
        return {t + 1 - k, t + 1};
    return {0, k};
}

inline RangeAzimuthMap radar_frame_map(const Dataset &dataset, std::size_t t, const RadarParams &params,
                                       const VirtualArray &va)
{
    const auto &snaps = dataset.snapshots;
    const auto [lo, hi] = sliding_window(t, snaps.size(), params.k_background);
    const std::span<const CsiSnapshot> window(snaps.data() + lo, hi - lo);
    const CsiTensor bg = estimate_background_median(window, window.size());
    const Eigen::MatrixXcd vm = collapse_to_virtual(snaps[t].csi - bg, va);
    return range_azimuth_map(vm, dataset.waveform, va, params.zero_pad);
}

inline RangeAzimuthMap radar_frame_map(const Dataset &dataset, std::size_t t, const RadarParams &params = {})
{
    if (t >= dataset.snapshots.size())
        throw std::out_of_range("radar_frame_map: frame index past the end of the dataset");
    return radar_frame_map(dataset, t, params, virtual_array(dataset.array));
}

// Classical chain per snapshot: sliding median background, subtraction,
// virtual-array collapse, range-azimuth map, gated threshold detection.
// Snapshots are processed in stored order as one access point's stream.
inline std::vector<std::vector<Detection>> radar_localize(const Dataset &dataset, const RadarParams &params = {})
{
    if (dataset.snapshots.empty())
        throw std::invalid_argument("radar_localize: empty dataset");
    if (params.k_background == 0)
        throw std::invalid_argument("radar_localize: K must be positive");
    const VirtualArray va = virtual_array(dataset.array);

    std::vector<std::vector<Detection>> out;
    out.reserve(dataset.snapshots.size());
    std::vector<Detection> prev;
    std::uint64_t next_track = 0;
    for (std::size_t t = 0; t < dataset.snapshots.size(); ++t)
    {
        const RangeAzimuthMap map = radar_frame_map(dataset, t, params, va);
        auto dets = detect(map, prev, params.detector);
        for (auto &d : dets)
            if (!d.track_id)
                d.track_id = next_track++;
        prev = dets;
        out.push_back(std::move(dets));
    }
    return out;
}
} // namespace csiloc
