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
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "csiloc/core/csi.hpp"

namespace csiloc
{
inline constexpr double kDefaultAlignTolerance = 1.0e-3; // seconds

struct AlignResult
{
    // Each group holds one snapshot per stream, ordered by source_id.
    std::vector<std::vector<CsiSnapshot>> groups;
    std::size_t dropped = 0;
};

// Groups snapshots of several access points that were taken at the same
// time. A group takes exactly one snapshot from every stream and spans at
// most `tolerance` seconds. The earliest pending snapshot anchors the next
// group; when some stream has nothing inside the anchor window, the anchor
// is dropped.
inline AlignResult align_snapshots(const std::vector<std::vector<CsiSnapshot>> &streams, double tolerance)
{
    if (!(tolerance >= 0.0))
        throw std::invalid_argument("align_snapshots: tolerance must be non-negative");
    for (const auto &s : streams)
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i].timestamp < s[i - 1].timestamp)
                throw std::invalid_argument("align_snapshots: stream not sorted by timestamp");

    // Canonical stream order makes the result independent of the input order.
    std::vector<std::size_t> order(streams.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t i) {
        const auto &s = streams[i];
        return std::make_tuple(s.empty() ? std::string() : s.front().source_id,
                               s.empty() ? 0.0 : s.front().timestamp, s.size());
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    AlignResult out;
    const std::size_t n = order.size();
    std::vector<std::size_t> next(n, 0);
    auto pending = [&](std::size_t s) { return next[s] < streams[order[s]].size(); };
    auto head = [&](std::size_t s) -> const CsiSnapshot & { return streams[order[s]][next[s]]; };

    while (true)
    {
        std::size_t anchor = n;
        for (std::size_t s = 0; s < n; ++s)
            if (pending(s) && (anchor == n || head(s).timestamp < head(anchor).timestamp))
                anchor = s;
        if (anchor == n)
            break;

        const double t0 = head(anchor).timestamp;
        bool complete = true;
        for (std::size_t s = 0; s < n && complete; ++s)
            complete = pending(s) && head(s).timestamp - t0 <= tolerance;

        if (!complete)
        {
            ++next[anchor];
            ++out.dropped;
            continue;
        }
        std::vector<CsiSnapshot> group;
        group.reserve(n);
        for (std::size_t s = 0; s < n; ++s)
            group.push_back(head(s)), ++next[s];
        out.groups.push_back(std::move(group));
    }
    return out;
}
} // namespace csiloc
