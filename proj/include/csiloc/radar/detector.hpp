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
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "csiloc/radar/background.hpp"
#include "csiloc/radar/range_azimuth.hpp"

namespace csiloc
{
struct Detection
{
    double range = 0.0;   // meters
    double azimuth = 0.0; // radians from boresight, positive toward the array axis
    Point2 position;
    double magnitude = 0.0;
    std::optional<std::uint64_t> track_id;
};

struct DetectorParams
{
    double threshold_db_over_floor = 12.0;
    double gate_radius_m = 1.0;
    std::size_t max_targets = 1;
    // Search window in range. Cabin sections are a few meters deep; the
    // rest of the unambiguous range only holds noise.
    double min_range_m = 0.0;
    double max_range_m = 8.0;
    // Weaker peaks closer than this to a stronger accepted one are sidelobes.
    double min_separation_m = 0.5;
};

namespace detail
{
// Vertex offset of a parabola through three log-magnitudes, in bins.
inline double parabolic_offset(double left, double center, double right)
{
    if (!(left > 0.0) || !(center > 0.0) || !(right > 0.0))
        return 0.0;
    const double l = std::log(left), c = std::log(center), r = std::log(right);
    const double den = l - 2.0 * c + r;
    if (!(den < 0.0))
        return 0.0;
    return std::clamp(0.5 * (l - r) / den, -0.5, 0.5);
}
} // namespace detail

// Threshold detector over a range-azimuth map.
//
// The floor is the median magnitude inside the search window (range window,
// |sin theta| <= 1). Candidates are local maxima above floor + threshold,
// refined to sub-bin precision with a parabola on log-magnitude along each
// axis. With previous detections present, a candidate must lie within
// gate_radius_m of one of them and inherits the nearest one's track id.
inline std::vector<Detection> detect(const RangeAzimuthMap &map, std::span<const Detection> prev,
                                     const DetectorParams &params = {})
{
    const Eigen::Index nr = map.range_bins();
    const Eigen::Index na = map.angle_bins();
    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index n = 0; n < nr; ++n)
    {
        const double r = map.range_axis[std::size_t(n)];
        if (r >= params.min_range_m && r <= params.max_range_m)
            rows.push_back(n);
    }
    for (Eigen::Index m = 0; m < na; ++m)
        if (std::abs(map.sin_theta_axis[std::size_t(m)]) <= 1.0)
            cols.push_back(m);
    if (rows.empty() || cols.empty())
        return {};

    std::vector<double> cells;
    cells.reserve(rows.size() * cols.size());
    for (auto n : rows)
        for (auto m : cols)
            cells.push_back(map.magnitudes(n, m));
    const double floor = detail::median_inplace(cells);
    const double threshold = floor * std::pow(10.0, params.threshold_db_over_floor / 20.0);

    auto mag = [&](Eigen::Index n, Eigen::Index m) { return map.magnitudes((n + nr) % nr, m); };
    auto in_window = [&](Eigen::Index m) { return m >= cols.front() && m <= cols.back(); };

    std::vector<Detection> candidates;
    for (auto n : rows)
        for (auto m : cols)
        {
            const double v = map.magnitudes(n, m);
            if (!(v > threshold))
                continue;
            bool peak = true;
            for (int dn = -1; dn <= 1 && peak; ++dn)
                for (int dm = -1; dm <= 1 && peak; ++dm)
                {
                    if ((dn == 0 && dm == 0) || !in_window(m + dm))
                        continue;
                    const double u = mag(n + dn, m + dm);
                    // Ties go to the earlier cell.
                    const bool earlier = dn < 0 || (dn == 0 && dm < 0);
                    peak = earlier ? v > u : v >= u;
                }
            if (!peak)
                continue;

            const double off_r = detail::parabolic_offset(mag(n - 1, m), v, mag(n + 1, m));
            double off_a = 0.0;
            if (in_window(m - 1) && in_window(m + 1))
                off_a = detail::parabolic_offset(mag(n, m - 1), v, mag(n, m + 1));

            Detection d;
            d.range = std::max(0.0, (double(n) + off_r) * map.range_bin_spacing);
            const double ds = na > 1 ? map.sin_theta_axis[1] - map.sin_theta_axis[0] : 0.0;
            const double s = std::clamp(map.sin_theta_axis[std::size_t(m)] + off_a * ds, -1.0, 1.0);
            d.azimuth = std::asin(s);
            d.position = map.to_position(d.range, s);
            d.magnitude = v;
            candidates.push_back(d);
        }

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Detection &a, const Detection &b) { return a.magnitude > b.magnitude; });

    std::vector<Detection> out;
    for (auto &c : candidates)
    {
        if (out.size() >= params.max_targets)
            break;
        if (!prev.empty())
        {
            const Detection *nearest = nullptr;
            double best = std::numeric_limits<double>::infinity();
            for (const auto &p : prev)
            {
                const double dist = distance(p.position, c.position);
                if (dist < best)
                    best = dist, nearest = &p;
            }
            if (best > params.gate_radius_m)
                continue;
            c.track_id = nearest->track_id;
        }
        bool separate = true;
        for (const auto &o : out)
            separate = separate && distance(o.position, c.position) >= params.min_separation_m;
        if (separate)
            out.push_back(c);
    }
    return out;
}
} // namespace csiloc
