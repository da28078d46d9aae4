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

#include <ostream>
#include <string>
#include <vector>

#include "csiloc/core/json_io.hpp"
#include "csiloc/radar/detector.hpp"
#include "csiloc/radar/range_azimuth.hpp"

namespace csiloc
{
// One row per cell: range_m,sin_theta,magnitude. Rows beyond max_range_m
// are skipped to keep files small.
inline void write_map_csv(const RangeAzimuthMap &map, std::ostream &out, double max_range_m,
                          const std::string &comment = {})
{
    if (!comment.empty())
        out << "# " << comment << '\n';
    out << "range_m,sin_theta,magnitude\n";
    out.precision(10);
    for (Eigen::Index n = 0; n < map.range_bins(); ++n)
    {
        const double r = map.range_axis[std::size_t(n)];
        if (r > max_range_m)
            break;
        for (Eigen::Index m = 0; m < map.angle_bins(); ++m)
            out << r << ',' << map.sin_theta_axis[std::size_t(m)] << ',' << map.magnitudes(n, m) << '\n';
    }
}

inline json detection_to_json(const Detection &d)
{
    json j{{"range_m", d.range}, {"azimuth_rad", d.azimuth}, {"position", to_json_point(d.position)},
           {"magnitude", d.magnitude}};
    j["track_id"] = d.track_id ? json(*d.track_id) : json(nullptr);
    return j;
}

// JSON lines: {"frame", "t", "detections": [...]}
inline void write_detections_jsonl(const std::vector<std::vector<Detection>> &frames,
                                   const std::vector<double> &timestamps, std::ostream &out)
{
    for (std::size_t i = 0; i < frames.size(); ++i)
    {
        json dets = json::array();
        for (const auto &d : frames[i])
            dets.push_back(detection_to_json(d));
        json line{{"frame", i}, {"t", i < timestamps.size() ? timestamps[i] : 0.0}, {"detections", dets}};
        out << line.dump() << '\n';
    }
}
} // namespace csiloc
