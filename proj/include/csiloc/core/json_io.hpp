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

#include <string>

#include "json.hpp"

#include "csiloc/core/csi.hpp"
#include "csiloc/core/geometry.hpp"
#include "csiloc/core/waveform.hpp"

namespace csiloc
{
using json = nlohmann::json;

inline json to_json_point(Point2 p) { return json::array({p.x, p.y}); }

inline Point2 point_from_json(const json &j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("expected [x, y] coordinate pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json_points(const std::vector<Point2> &pts)
{
    json a = json::array();
    for (const auto &p : pts)
        a.push_back(to_json_point(p));
    return a;
}

inline std::vector<Point2> points_from_json(const json &j)
{
    if (!j.is_array())
        throw std::invalid_argument("expected an array of coordinate pairs");
    std::vector<Point2> out;
    for (const auto &e : j)
        out.push_back(point_from_json(e));
    return out;
}

inline json to_json_region(const Region &r) { return {{"x", {r.x_min, r.x_max}}, {"y", {r.y_min, r.y_max}}}; }

inline Region region_from_json(const json &j)
{
    Region r{j.at("x").at(0).get<double>(), j.at("x").at(1).get<double>(), j.at("y").at(0).get<double>(),
             j.at("y").at(1).get<double>()};
    if (!r.valid())
        throw std::invalid_argument("region bounds are empty or inverted");
    return r;
}

inline json to_json_complex(cd v) { return json::array({v.real(), v.imag()}); }

inline cd complex_from_json(const json &j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}
} // namespace csiloc
