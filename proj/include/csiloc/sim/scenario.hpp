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
#include <random>
#include <vector>

#include "csiloc/core/constants.hpp"
#include "csiloc/core/csi.hpp"
#include "csiloc/sim/channel.hpp"

// Scene and motion generators for benchmarks and demos. All draws come from
// the caller's engine, so a seed pins the scenario.

namespace csiloc
{
using Rng = std::mt19937_64;

struct ClutterSpec
{
    std::size_t min_count = 10;
    std::size_t max_count = 50;
    double min_reflectivity = 0.1;
    double max_reflectivity = 0.5;
    double keep_out = 0.1; // minimum distance to any antenna element, meters
};

// Static cabin furniture: random point scatterers with random phase.
inline std::vector<Scatterer> random_clutter(const Region &region, const AntennaArray &array, Rng &rng,
                                             const ClutterSpec &spec = {})
{
    std::uniform_int_distribution<std::size_t> count(spec.min_count, spec.max_count);
    std::uniform_real_distribution<double> ux(region.x_min, region.x_max);
    std::uniform_real_distribution<double> uy(region.y_min, region.y_max);
    std::uniform_real_distribution<double> mag(spec.min_reflectivity, spec.max_reflectivity);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    const std::size_t n = count(rng);
    std::vector<Scatterer> out;
    while (out.size() < n)
    {
        const Point2 p{ux(rng), uy(rng)};
        const double m = mag(rng);
        const double ph = phase(rng);
        bool clear = true;
        for (const auto &e : array.elements)
            clear = clear && distance(e, p) >= spec.keep_out;
        if (clear)
            out.push_back({p, std::polar(m, ph)});
    }
    return out;
}

struct WalkSpec
{
    double step = 0.03;         // meters per frame
    double turn_sigma = 0.3;    // radians per frame
};

// Smoothly turning walk that reflects off the borders of `area`.
inline std::vector<Point2> random_walk(const Region &area, std::size_t frames, Rng &rng, const WalkSpec &spec = {})
{
    std::uniform_real_distribution<double> ux(area.x_min, area.x_max);
    std::uniform_real_distribution<double> uy(area.y_min, area.y_max);
    std::uniform_real_distribution<double> u_heading(0.0, kTwoPi);
    std::normal_distribution<double> turn(0.0, spec.turn_sigma);
    Point2 p{ux(rng), uy(rng)};
    double heading = u_heading(rng);
    std::vector<Point2> out;
    out.reserve(frames);
    for (std::size_t i = 0; i < frames; ++i)
    {
        heading += turn(rng);
        const Point2 q = p + spec.step * Point2{std::cos(heading), std::sin(heading)};
        if (area.contains(q))
            p = q;
        else
            heading += kPi;
        out.push_back(p);
    }
    return out;
}

// Two people on a cross-range aisle at y = aisle_y. Their separation follows
// a slow oscillation over [min_sep, max_sep], or a linear sweep when
// `sweep` is set. The pair center wanders along the aisle.
struct AislePairSpec
{
    double aisle_y = 2.0;
    double half_length = 1.6;
    double lateral_sigma = 0.05;
    double min_separation = 0.2;
    double max_separation = 3.0;
    double drift_sigma = 0.02;
    double separation_rate = 0.03; // radians per frame of the oscillation
};

inline std::vector<std::vector<Point2>> aisle_pair_walk(std::size_t frames, bool sweep, Rng &rng,
                                                        const AislePairSpec &spec = {})
{
    std::uniform_real_distribution<double> u_center(-0.3, 0.3);
    std::uniform_real_distribution<double> u_phase(0.0, kTwoPi);
    std::normal_distribution<double> drift(0.0, spec.drift_sigma);
    std::normal_distribution<double> lateral(0.0, spec.lateral_sigma);
    double c = u_center(rng);
    const double phase = u_phase(rng);
    const double span = spec.max_separation - spec.min_separation;
    std::vector<std::vector<Point2>> out;
    out.reserve(frames);
    for (std::size_t i = 0; i < frames; ++i)
    {
        const double s = sweep ? spec.min_separation + span * double(i) / double(std::max<std::size_t>(frames - 1, 1))
                               : spec.min_separation +
                                     span * (0.5 + 0.5 * std::sin(double(i) * spec.separation_rate + phase));
        const double lim = std::max(0.0, spec.half_length - 0.5 * s);
        c = std::clamp(c + drift(rng), -lim, lim);
        const double ya = spec.aisle_y + lateral(rng);
        const double yb = spec.aisle_y + lateral(rng);
        out.push_back({{c - 0.5 * s, ya}, {c + 0.5 * s, yb}});
    }
    return out;
}

inline std::vector<ScriptStep> make_script(const std::vector<std::vector<Point2>> &positions, double t0, double period)
{
    std::vector<ScriptStep> s;
    s.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
        s.push_back({t0 + double(i) * period, positions[i]});
    return s;
}

inline std::vector<ScriptStep> make_script(const std::vector<Point2> &single, double t0, double period)
{
    std::vector<std::vector<Point2>> p;
    p.reserve(single.size());
    for (const auto &q : single)
        p.push_back({q});
    return make_script(p, t0, period);
}
} // namespace csiloc
